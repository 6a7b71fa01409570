#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <string>
#include <vector>

namespace padic {

/// Weakly decreasing integer tuple (an element of Sig_N). Used for singular numbers
/// and for the states of both jump processes.
class Signature {
public:
    Signature() = default;
    explicit Signature(std::vector<int> parts);
    Signature(std::initializer_list<int> parts) : Signature(std::vector<int>(parts)) {}

    // (value[n]), e.g. zeros(3) = (0,0,0).
    static Signature constant(std::size_t n, int value);
    static Signature zeros(std::size_t n) { return constant(n, 0); }
    // (1, 0[n-1])
    static Signature single_box(std::size_t n);

    std::size_t size() const { return parts_.size(); }
    int operator[](std::size_t i) const { return parts_[i]; }
    const std::vector<int>& parts() const { return parts_; }

    // |lambda| = sum of parts.
    long weight() const;
    // m_x(lambda): number of parts equal to x.
    std::size_t multiplicity(int x) const;

    // lambda + e_i (0-based) if the result stays weakly decreasing.
    bool can_add_box(std::size_t i) const;
    Signature add_box(std::size_t i) const;

    // "2,0" form used by the CLI and CSV output.
    std::string to_string() const;
    static Signature parse(const std::string& text);

    friend auto operator<=>(const Signature&, const Signature&) = default;
    friend bool operator==(const Signature&, const Signature&) = default;

private:
    std::vector<int> parts_;
};

bool is_weakly_decreasing(const std::vector<int>& parts);

std::ostream& operator<<(std::ostream& os, const Signature& s);

} // namespace padic
