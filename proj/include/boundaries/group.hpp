#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace boundaries {

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Finite group from a dense multiplication table.
class Group {
public:
    Group() = default;
    // table[a][b] = a*b. Throws InputError naming the failing axiom.
    static Group from_table(const std::vector<std::vector<int>>& table, std::vector<std::string> names = {},
                            std::size_t cap = 64);
    static Group cyclic(int n);
    static Group product(const Group& a, const Group& b);
    static Group trivial() { return cyclic(1); }
    static Group symmetric3();

    int order() const { return n_; }
    int mul(int a, int b) const { return mul_[a * n_ + b]; }
    int inv(int a) const { return inv_[a]; }
    int identity() const { return e_; }
    const std::string& name(int a) const { return names_[a]; }
    std::vector<std::vector<int>> table() const;

private:
    int n_ = 0;
    int e_ = 0;
    std::vector<int> mul_;
    std::vector<int> inv_;
    std::vector<std::string> names_;
};

struct Homomorphism {
    const Group* src = nullptr;
    const Group* tgt = nullptr;
    std::vector<int> map;

    int operator()(int g) const { return map[g]; }
    // Empty string when valid.
    std::string check() const;
    bool injective() const;
    bool surjective() const;
    std::vector<int> kernel() const;
    std::vector<int> image() const;
};

// Verifies 1 -> L -i-> G -p-> Q -> 1; returns the failing condition or "".
std::string check_short_exact(const Homomorphism& i, const Homomorphism& p);

}  // namespace boundaries
