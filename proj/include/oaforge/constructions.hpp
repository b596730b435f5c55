#pragma once

// Explicit generators: the length-6 cell with edge directions, the length-13
// array built from it and its switchings, Hamming codes, and a Phelps-style
// family of 2-fold perfect codes built from quaternary MDS codes.

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "oaforge/cube.hpp"

namespace oaforge {

struct LabeledCode {
    VertexSet words;
    std::vector<int> dir;  // indexed by word; edge direction 1..6, 0 for non-members

    int direction(Word w) const { return dir.at(w); }
    // Edge e is {edges()[e].first, edges()[e].second}; edges 2(i-1) and 2(i-1)+1 have direction i.
    std::vector<std::pair<Word, Word>> edges() const;
};

LabeledCode fdf_c6();
VertexSet fdf_c13();

// Flips the last coordinate of the 2^7 words built from either endpoint of
// each listed edge (ids 0..11). The result is verified equitable.
VertexSet switching(const VertexSet& c13, const std::vector<int>& edges);

// Linear 1-perfect code of length 2^r - 1; coordinate j has column j in binary.
VertexSet hamming_code(int r);

// Words over {0,1,2,3}^k, position 1 in the lowest two bits.
struct MdsCode {
    int k = 0;
    std::vector<std::uint32_t> words;  // sorted
    std::vector<char> member;          // 4^k table

    bool contains(std::uint32_t w) const { return member.at(w) != 0; }
    std::size_t size() const { return words.size(); }
};

int quaternary_symbol(std::uint32_t w, int pos);  // pos is 1-based
std::uint32_t parse_quaternary(const std::string& text);
std::string format_quaternary(std::uint32_t w, int k);

MdsCode mds_from_words(int k, const std::vector<std::uint32_t>& words);

// Every line of H(k,4) meets M in exactly two words.
bool mds_property_lines(const MdsCode& m);
// Last symbol pairing 0<->1 and 2<->3 preserves membership.
bool mds_property_pairing(const MdsCode& m);

// Builds M_k and verifies the line property, and the pairing for k >= 4;
// throws VerificationFailure otherwise.
MdsCode build_mk(int k);

// Closed walk of odd length in the graph on M where words differing in one
// position are adjacent. Throws VerificationFailure if M is bipartite.
std::vector<std::uint32_t> odd_cycle_witness(const MdsCode& m);

// Visits every word of C_{2^m-1} once; no dense storage is needed.
void for_each_phelps_word(int m, const std::function<void(Word)>& visit);

// C_{2^m-1}, verified equitable with [[1,2^m-2],[2,2^m-3]] and closed under
// flipping the last coordinate. Throws ResourceGate when 2^m-1 exceeds dense storage.
VertexSet phelps_code(int m);

// C_{2^m-2} = 0-shortening of C_{2^m-1} at the last coordinate, verified
// equitable with [[0,2^m-2],[2,2^m-4]] and of strength 2^(m-1)-1.
VertexSet shorten_phelps(int m);

}  // namespace oaforge
