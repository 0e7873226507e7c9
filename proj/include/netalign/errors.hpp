#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace netalign {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed network: unknown nodes, bad delays, cycles, missing S_i -> T_i paths,
// or an unreadable network file.
class InvalidNetwork : public Error {
public:
    using Error::Error;
};

// Some S_i -> T_j pair (1-based in the message, 0-based in pairs()) has no
// path; the feasibility logic here assumes every pair is connected.
class ZeroMinCut : public Error {
public:
    explicit ZeroMinCut(std::vector<std::pair<int, int>> pairs);
    const std::vector<std::pair<int, int>>& pairs() const { return pairs_; }

private:
    std::vector<std::pair<int, int>> pairs_;
};

// A random LEK draw made a transfer value vanish where it has to be inverted.
class DegenerateLeks : public Error {
public:
    using Error::Error;
};

}  // namespace netalign
