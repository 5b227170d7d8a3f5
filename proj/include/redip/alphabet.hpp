// Program variables and valuations over them.
#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace redip {

/// Ordered set of variable names. Symbols are referred to by their index.
class Alphabet {
public:
    Alphabet() = default;
    explicit Alphabet(std::vector<std::string> names);

    std::size_t size() const { return names_.size(); }
    bool empty() const { return names_.empty(); }
    const std::string& name(std::size_t index) const { return names_.at(index); }
    const std::vector<std::string>& names() const { return names_; }

    std::optional<std::size_t> find(const std::string& name) const;
    /// Throws UnknownVariable.
    std::size_t index_of(const std::string& name) const;
    bool contains(const std::string& name) const { return find(name).has_value(); }

    /// Appends name if absent; returns its index.
    std::size_t add(const std::string& name);

    /// True if every name of this alphabet also occurs in other.
    bool subset_of(const Alphabet& other) const;

    friend bool operator==(const Alphabet&, const Alphabet&) = default;

private:
    std::vector<std::string> names_;
};

/// Alphabet containing the names of a followed by those of b not in a.
Alphabet merge(const Alphabet& a, const Alphabet& b);

/// A program state: one natural number per alphabet symbol.
struct Valuation {
    std::vector<std::uint64_t> counts;

    Valuation() = default;
    explicit Valuation(std::size_t arity) : counts(arity, 0) {}
    explicit Valuation(std::vector<std::uint64_t> c) : counts(std::move(c)) {}

    std::size_t arity() const { return counts.size(); }
    std::uint64_t operator[](std::size_t i) const { return counts.at(i); }
    std::uint64_t& operator[](std::size_t i) { return counts.at(i); }

    auto operator<=>(const Valuation&) const = default;
};

/// Builds a valuation over alphabet from named counts; absent names are 0.
/// Throws UnknownVariable for names outside the alphabet.
Valuation make_valuation(const Alphabet& alphabet, const std::map<std::string, std::uint64_t>& named);

/// "{x:2, r:0}"
std::string to_string(const Alphabet& alphabet, const Valuation& v);

/// Counts occurrences of each symbol in word (the Parikh image).
Valuation parikh(const std::vector<std::size_t>& word, std::size_t arity);

}  // namespace redip
