#include "padic/signature.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "padic/errors.hpp"

namespace padic {

bool is_weakly_decreasing(const std::vector<int>& parts) {
    return std::is_sorted(parts.begin(), parts.end(), std::greater<>());
}

Signature::Signature(std::vector<int> parts) : parts_(std::move(parts)) {
    if (!is_weakly_decreasing(parts_)) {
        std::vector<int> copy = parts_;
        parts_.clear();
        std::ostringstream os;
        for (std::size_t i = 0; i < copy.size(); ++i) os << (i ? "," : "") << copy[i];
        throw InvalidInput("signature (" + os.str() + ") is not weakly decreasing");
    }
}

Signature Signature::constant(std::size_t n, int value) { return Signature(std::vector<int>(n, value)); }

Signature Signature::single_box(std::size_t n) {
    std::vector<int> parts(n, 0);
    if (n > 0) parts[0] = 1;
    return Signature(std::move(parts));
}

long Signature::weight() const { return std::accumulate(parts_.begin(), parts_.end(), 0L); }

std::size_t Signature::multiplicity(int x) const {
    return static_cast<std::size_t>(std::count(parts_.begin(), parts_.end(), x));
}

bool Signature::can_add_box(std::size_t i) const {
    if (i >= parts_.size()) return false;
    return i == 0 || parts_[i - 1] > parts_[i];
}

Signature Signature::add_box(std::size_t i) const {
    if (!can_add_box(i)) throw InvalidInput("adding a box at position " + std::to_string(i + 1) + " breaks monotonicity");
    Signature out = *this;
    ++out.parts_[i];
    return out;
}

std::string Signature::to_string() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < parts_.size(); ++i) os << (i ? "," : "") << parts_[i];
    return os.str();
}

Signature Signature::parse(const std::string& text) {
    std::vector<int> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            parts.push_back(std::stoi(item, &used));
            if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
        } catch (const std::logic_error&) {
            throw InvalidInput("cannot parse signature entry '" + item + "'");
        }
    }
    if (parts.empty()) throw InvalidInput("empty signature");
    return Signature(std::move(parts));
}

std::ostream& operator<<(std::ostream& os, const Signature& s) { return os << "(" << s.to_string() << ")"; }

} // namespace padic
