#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace oaforge {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A precondition on the arguments does not hold.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

// A computed object failed its post-condition check.
class VerificationFailure : public Error {
public:
    using Error::Error;
};

class NotEquitable : public VerificationFailure {
public:
    NotEquitable(std::uint32_t witness, int witness_cell, std::vector<int> observed, std::vector<int> expected,
                 const std::string& what)
        : VerificationFailure(what), witness_(witness), witness_cell_(witness_cell), observed_(std::move(observed)),
          expected_(std::move(expected)) {}

    std::uint32_t witness() const noexcept { return witness_; }
    int witness_cell() const noexcept { return witness_cell_; }
    const std::vector<int>& observed_row() const noexcept { return observed_; }
    const std::vector<int>& expected_row() const noexcept { return expected_; }

private:
    std::uint32_t witness_;
    int witness_cell_;
    std::vector<int> observed_;
    std::vector<int> expected_;
};

// A subcube count during completion is inconsistent with the index lambda.
class CountContradiction : public Error {
public:
    CountContradiction(std::uint32_t word, std::uint64_t count, const std::string& what)
        : Error(what), word_(word), count_(count) {}
    std::uint32_t word() const noexcept { return word_; }
    std::uint64_t count() const noexcept { return count_; }

private:
    std::uint32_t word_;
    std::uint64_t count_;
};

// The requested computation exceeds what dense storage allows.
class ResourceGate : public Error {
public:
    using Error::Error;
};

class CorruptStore : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(int line, const std::string& what) : Error(what), line_(line) {}
    int line() const noexcept { return line_; }

private:
    int line_;
};

}  // namespace oaforge
