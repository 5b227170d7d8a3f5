#include "redip/alphabet.hpp"

#include "redip/errors.hpp"

#include <algorithm>

namespace redip {

Alphabet::Alphabet(std::vector<std::string> names) {
    for (auto& n : names) add(n);
}

std::optional<std::size_t> Alphabet::find(const std::string& name) const {
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - names_.begin());
}

std::size_t Alphabet::index_of(const std::string& name) const {
    if (auto i = find(name)) return *i;
    throw UnknownVariable("unknown variable '" + name + "'");
}

std::size_t Alphabet::add(const std::string& name) {
    if (auto i = find(name)) return *i;
    names_.push_back(name);
    return names_.size() - 1;
}

bool Alphabet::subset_of(const Alphabet& other) const {
    return std::all_of(names_.begin(), names_.end(), [&](const std::string& n) { return other.contains(n); });
}

Alphabet merge(const Alphabet& a, const Alphabet& b) {
    Alphabet out = a;
    for (const auto& n : b.names()) out.add(n);
    return out;
}

Valuation make_valuation(const Alphabet& alphabet, const std::map<std::string, std::uint64_t>& named) {
    Valuation v(alphabet.size());
    for (const auto& [name, count] : named) v[alphabet.index_of(name)] = count;
    return v;
}

std::string to_string(const Alphabet& alphabet, const Valuation& v) {
    std::string out = "{";
    for (std::size_t i = 0; i < v.arity(); ++i) {
        if (i) out += ", ";
        out += alphabet.name(i) + ":" + std::to_string(v[i]);
    }
    return out + "}";
}

Valuation parikh(const std::vector<std::size_t>& word, std::size_t arity) {
    Valuation v(arity);
    for (auto s : word) ++v[s];
    return v;
}

}  // namespace redip
