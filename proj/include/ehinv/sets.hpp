#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "error.hpp"
#include "modular.hpp"

namespace ehinv {

using Element = std::int64_t;

inline Element checked_add(Element a, Element b) {
    Element out{};
    if (__builtin_add_overflow(a, b, &out))
        throw OverflowError("sum " + std::to_string(a) + " + " + std::to_string(b) + " overflows 64 bits");
    return out;
}

inline Element checked_mul(Element a, Element b) {
    Element out{};
    if (__builtin_mul_overflow(a, b, &out))
        throw OverflowError("product " + std::to_string(a) + " * " + std::to_string(b) + " overflows 64 bits");
    return out;
}

namespace detail {

inline void require_strictly_increasing(std::span<const Element> elems, const char* what) {
    for (std::size_t i = 1; i < elems.size(); ++i) {
        if (elems[i] == elems[i - 1])
            throw PreconditionError(std::string(what) + ": duplicate element " + std::to_string(elems[i]));
        if (elems[i] < elems[i - 1]) throw PreconditionError(std::string(what) + ": elements must be strictly increasing");
    }
}

inline std::vector<Element> sorted_unique(std::vector<Element> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

} // namespace detail

/// Finite set of integers, stored strictly increasing.
class IntSet {
public:
    IntSet() = default;

    explicit IntSet(std::vector<Element> elements) : elems_(std::move(elements)) {
        detail::require_strictly_increasing(elems_, "IntSet");
    }
    IntSet(std::initializer_list<Element> elements) : IntSet(std::vector<Element>(elements)) {}

    /// Sorts and deduplicates instead of rejecting.
    static IntSet from_unsorted(std::vector<Element> elements) {
        return IntSet(detail::sorted_unique(std::move(elements)));
    }

    std::span<const Element> elements() const { return elems_; }
    std::size_t size() const { return elems_.size(); }
    bool empty() const { return elems_.empty(); }
    Element min() const { return elems_.front(); }
    Element max() const { return elems_.back(); }
    bool contains(Element x) const { return std::binary_search(elems_.begin(), elems_.end(), x); }

    friend bool operator==(const IntSet&, const IntSet&) = default;
    friend auto operator<=>(const IntSet&, const IntSet&) = default;

private:
    std::vector<Element> elems_;
};

/// Subset of Z/pZ, p prime, stored by canonical residues 0..p-1.
class ModSet {
public:
    ModSet(Element modulus, std::vector<Element> residues) : modulus_(modulus), elems_(std::move(residues)) {
        if (!is_prime(modulus_)) throw PreconditionError("modulus " + std::to_string(modulus_) + " is not prime");
        detail::require_strictly_increasing(elems_, "ModSet");
        for (Element r : elems_) {
            if (r < 0 || r >= modulus_)
                throw PreconditionError("residue " + std::to_string(r) + " outside [0, " +
                                        std::to_string(modulus_ - 1) + "]");
        }
    }
    ModSet(Element modulus, std::initializer_list<Element> residues)
        : ModSet(modulus, std::vector<Element>(residues)) {}

    /// Reduces every value mod p, then sorts and deduplicates.
    static ModSet reduce(Element modulus, std::vector<Element> values) {
        if (!is_prime(modulus)) throw PreconditionError("modulus " + std::to_string(modulus) + " is not prime");
        for (Element& v : values) {
            v %= modulus;
            if (v < 0) v += modulus;
        }
        return ModSet(modulus, detail::sorted_unique(std::move(values)));
    }

    Element modulus() const { return modulus_; }
    std::span<const Element> elements() const { return elems_; }
    std::size_t size() const { return elems_.size(); }
    bool empty() const { return elems_.empty(); }
    Element min() const { return elems_.front(); }
    Element max() const { return elems_.back(); }
    bool contains(Element x) const { return std::binary_search(elems_.begin(), elems_.end(), x); }

    friend bool operator==(const ModSet&, const ModSet&) = default;

private:
    Element modulus_;
    std::vector<Element> elems_;
};

struct Integers {
    friend bool operator==(Integers, Integers) = default;
};

class ModP {
public:
    explicit ModP(Element p) : p_(p) {
        if (!is_prime(p_)) throw PreconditionError("modulus " + std::to_string(p_) + " is not prime");
    }
    Element p() const { return p_; }
    friend bool operator==(const ModP&, const ModP&) = default;

private:
    Element p_;
};

using GroupContext = std::variant<Integers, ModP>;

inline GroupContext context_of(const IntSet&) { return Integers{}; }
inline GroupContext context_of(const ModSet& s) { return ModP(s.modulus()); }

inline void require_same_modulus(const ModSet& a, const ModSet& b) {
    if (a.modulus() != b.modulus())
        throw ModulusMismatch("operands live in Z/" + std::to_string(a.modulus()) + "Z and Z/" +
                              std::to_string(b.modulus()) + "Z");
}

// ---------------------------------------------------------------------------
// Affine images

inline IntSet translate(const IntSet& s, Element shift) {
    std::vector<Element> out;
    out.reserve(s.size());
    for (Element x : s.elements()) out.push_back(checked_add(x, shift));
    return IntSet(std::move(out));
}

inline IntSet dilate(const IntSet& s, Element factor) {
    if (factor == 0) throw PreconditionError("dilate: factor must be nonzero");
    std::vector<Element> out;
    out.reserve(s.size());
    for (Element x : s.elements()) out.push_back(checked_mul(x, factor));
    return IntSet::from_unsorted(std::move(out));
}

inline ModSet translate(const ModSet& s, Element shift) {
    const Element p = s.modulus();
    Element t = shift % p;
    if (t < 0) t += p;
    std::vector<Element> out;
    out.reserve(s.size());
    for (Element x : s.elements()) out.push_back(static_cast<Element>((static_cast<std::uint64_t>(x) + t) % p));
    std::sort(out.begin(), out.end());
    return ModSet(p, std::move(out));
}

inline ModSet dilate(const ModSet& s, Element factor) {
    const Element p = s.modulus();
    Element f = factor % p;
    if (f < 0) f += p;
    if (f == 0) throw PreconditionError("dilate: factor must be a nonzero residue");
    std::vector<Element> out;
    out.reserve(s.size());
    for (Element x : s.elements())
        out.push_back(static_cast<Element>(mul_mod(static_cast<std::uint64_t>(x), static_cast<std::uint64_t>(f),
                                                   static_cast<std::uint64_t>(p))));
    std::sort(out.begin(), out.end());
    return ModSet(p, std::move(out));
}

// ---------------------------------------------------------------------------
// Set literals: "{e1,e2,...}" and "mod p: {e1,...}"

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\n' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

inline Element parse_integer(std::string_view token, std::string_view literal) {
    token = trim(token);
    if (!token.empty() && token.front() == '+') token.remove_prefix(1);
    Element value{};
    const auto* first = token.data();
    const auto* last = token.data() + token.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (token.empty() || ec != std::errc{} || ptr != last) {
        if (ec == std::errc::result_out_of_range)
            throw ParseError("integer '" + std::string(token) + "' does not fit in 64 bits");
        throw ParseError("bad integer '" + std::string(token) + "' in set literal '" + std::string(literal) + "'");
    }
    return value;
}

} // namespace detail

/// Parses "{e1,e2,...}" (strictly increasing, base 10). "{}" is the empty set.
inline std::vector<Element> parse_elements(std::string_view literal) {
    const std::string_view body = detail::trim(literal);
    if (body.size() < 2 || body.front() != '{' || body.back() != '}')
        throw ParseError("set literal must look like {e1,e2,...}: '" + std::string(literal) + "'");
    std::string_view inner = detail::trim(body.substr(1, body.size() - 2));
    std::vector<Element> out;
    if (inner.empty()) return out;
    while (true) {
        const auto comma = inner.find(',');
        out.push_back(detail::parse_integer(inner.substr(0, comma), literal));
        if (comma == std::string_view::npos) break;
        inner.remove_prefix(comma + 1);
    }
    for (std::size_t i = 1; i < out.size(); ++i) {
        if (out[i] == out[i - 1]) throw ParseError("duplicate element " + std::to_string(out[i]) + " in set literal");
        if (out[i] < out[i - 1]) throw ParseError("set literal elements must be strictly increasing");
    }
    return out;
}

inline IntSet parse_int_set(std::string_view literal) { return IntSet(parse_elements(literal)); }

/// Parses "mod p: {r1,...}".
inline ModSet parse_mod_set(std::string_view literal) {
    std::string_view s = detail::trim(literal);
    if (s.substr(0, 3) != "mod") throw ParseError("modular set literal must start with 'mod p:': '" + std::string(literal) + "'");
    s.remove_prefix(3);
    const auto colon = s.find(':');
    if (colon == std::string_view::npos) throw ParseError("modular set literal is missing ':'");
    const Element p = detail::parse_integer(s.substr(0, colon), literal);
    if (!is_prime(p)) throw ParseError("modulus " + std::to_string(p) + " is not prime");
    std::vector<Element> residues = parse_elements(s.substr(colon + 1));
    for (Element r : residues) {
        if (r < 0 || r >= p)
            throw ParseError("residue " + std::to_string(r) + " out of range for modulus " + std::to_string(p));
    }
    return ModSet(p, std::move(residues));
}

inline std::string format_elements(std::span<const Element> elems) {
    std::string out = "{";
    for (std::size_t i = 0; i < elems.size(); ++i) {
        if (i != 0) out += ',';
        out += std::to_string(elems[i]);
    }
    out += '}';
    return out;
}

inline std::string to_string(const IntSet& s) { return format_elements(s.elements()); }
inline std::string to_string(const ModSet& s) {
    return "mod " + std::to_string(s.modulus()) + ": " + format_elements(s.elements());
}

} // namespace ehinv
