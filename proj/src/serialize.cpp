#include "redip/serialize.hpp"

#include "redip/errors.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace redip {

using json = nlohmann::ordered_json;

namespace {

std::string field_path(const std::string& base, std::size_t index) {
    return base + "[" + std::to_string(index) + "]";
}

Rational read_weight(const json& value, const std::string& where) {
    Rational r;
    if (value.is_string()) {
        try {
            r = parse_rational(value.get<std::string>());
        } catch (const InvalidWeight& e) {
            throw InvalidWeight(where + ": " + e.what());
        }
    } else if (value.is_number_integer()) {
        r = Rational(std::to_string(value.get<long long>()));
    } else {
        throw ParseError(where + ": weight must be a fraction string");
    }
    if (r < 0) throw InvalidWeight(where + ": negative weight " + to_string(r));
    return r;
}

StateId read_state(const json& value, std::size_t states, const std::string& where) {
    if (!value.is_number_unsigned() && !(value.is_number_integer() && value.get<long long>() >= 0))
        throw ParseError(where + ": state index must be a natural number");
    auto q = value.get<std::uint64_t>();
    if (q >= states)
        throw ParseError(where + ": state " + std::to_string(q) + " out of range (automaton has " +
                         std::to_string(states) + " states)");
    return static_cast<StateId>(q);
}

StateId read_state_key(const std::string& key, std::size_t states, const std::string& where) {
    std::size_t pos = 0;
    unsigned long long q = 0;
    try {
        q = std::stoull(key, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos == 0 || pos != key.size() || key[0] == '-' || key[0] == '+')
        throw ParseError(where + ": key \"" + key + "\" is not a state index");
    return read_state(json(q), states, where);
}

const json& require(const json& obj, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end()) throw ParseError(std::string("missing field \"") + key + "\"");
    return *it;
}

}  // namespace

std::string serialize(const Pga& a) {
    json out;
    out["alphabet"] = a.alphabet().names();
    out["states"] = a.num_states();
    json edges = json::array();
    for (const auto& e : a.edges()) {
        json je = {{"src", e.src}, {"dst", e.dst}, {"weight", to_string(e.weight)}};
        if (e.symbol) je["symbol"] = a.alphabet().name(*e.symbol);
        edges.push_back(std::move(je));
    }
    out["edges"] = std::move(edges);
    json initial = json::object();
    json final_weights = json::object();
    for (StateId q = 0; q < a.num_states(); ++q) {
        if (a.initial(q) != 0) initial[std::to_string(q)] = to_string(a.initial(q));
        if (a.final_weight(q) != 0) final_weights[std::to_string(q)] = to_string(a.final_weight(q));
    }
    out["initial"] = std::move(initial);
    out["final"] = std::move(final_weights);
    return out.dump(2) + "\n";
}

Pga deserialize(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError("top-level value must be an object");

    const json& alphabet_field = require(doc, "alphabet");
    if (!alphabet_field.is_array()) throw ParseError("\"alphabet\" must be an array of names");
    Alphabet alphabet;
    for (std::size_t i = 0; i < alphabet_field.size(); ++i) {
        const json& name = alphabet_field[i];
        if (!name.is_string() || name.get<std::string>().empty())
            throw ParseError(field_path("alphabet", i) + ": variable name must be a non-empty string");
        if (alphabet.contains(name.get<std::string>()))
            throw ParseError(field_path("alphabet", i) + ": duplicate variable \"" + name.get<std::string>() + "\"");
        alphabet.add(name.get<std::string>());
    }

    const json& states_field = require(doc, "states");
    if (!states_field.is_number_integer() || states_field.get<long long>() < 0)
        throw ParseError("\"states\" must be a natural number");
    auto states = static_cast<std::size_t>(states_field.get<long long>());

    PgaBuilder b(alphabet);
    b.add_states(states);

    if (auto it = doc.find("edges"); it != doc.end()) {
        if (!it->is_array()) throw ParseError("\"edges\" must be an array");
        for (std::size_t i = 0; i < it->size(); ++i) {
            const json& e = (*it)[i];
            std::string where = field_path("edges", i);
            if (!e.is_object()) throw ParseError(where + ": edge must be an object");
            for (const char* key : {"src", "dst", "weight"})
                if (!e.contains(key)) throw ParseError(where + ": missing field \"" + key + "\"");
            StateId src = read_state(e["src"], states, where + ".src");
            StateId dst = read_state(e["dst"], states, where + ".dst");
            Rational w = read_weight(e["weight"], where + ".weight");
            Symbol symbol;
            if (auto s = e.find("symbol"); s != e.end() && !s->is_null()) {
                if (!s->is_string()) throw ParseError(where + ".symbol: must be a variable name");
                auto idx = alphabet.find(s->get<std::string>());
                if (!idx) throw ParseError(where + ".symbol: \"" + s->get<std::string>() + "\" not in alphabet");
                symbol = *idx;
            }
            b.add_edge(src, dst, w, symbol);
        }
    }

    for (const char* key : {"initial", "final"}) {
        auto it = doc.find(key);
        if (it == doc.end()) continue;
        if (!it->is_object()) throw ParseError(std::string("\"") + key + "\" must be an object");
        for (const auto& [k, v] : it->items()) {
            std::string where = std::string(key) + "." + k;
            StateId q = read_state_key(k, states, where);
            Rational w = read_weight(v, where);
            if (key[0] == 'i')
                b.set_initial(q, w);
            else
                b.set_final(q, w);
        }
    }
    return b.build();
}

Pga load_pga(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    try {
        return deserialize(buffer.str());
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    } catch (const InvalidWeight& e) {
        throw InvalidWeight(path + ": " + e.what());
    }
}

std::string export_dot(const Pga& a) {
    std::ostringstream out;
    out << "digraph pga {\n  rankdir=LR;\n  node [shape=circle];\n";
    for (StateId q = 0; q < a.num_states(); ++q) out << "  q" << q << " [label=\"" << q << "\"];\n";
    for (StateId q = 0; q < a.num_states(); ++q) {
        if (a.initial(q) != 0) {
            out << "  in" << q << " [shape=point, style=invis];\n  in" << q << " -> q" << q;
            if (a.initial(q) != 1) out << " [label=\"" << to_string(a.initial(q)) << "\"]";
            out << ";\n";
        }
        if (a.final_weight(q) != 0) {
            out << "  out" << q << " [shape=point, style=invis];\n  q" << q << " -> out" << q;
            if (a.final_weight(q) != 1) out << " [label=\"" << to_string(a.final_weight(q)) << "\"]";
            out << ";\n";
        }
    }
    for (const auto& e : a.edges()) {
        std::string label;
        if (!e.symbol) label = to_string(e.weight);
        else if (e.weight == 1) label = a.alphabet().name(*e.symbol);
        else label = to_string(e.weight) + "·" + a.alphabet().name(*e.symbol);
        out << "  q" << e.src << " -> q" << e.dst << " [label=\"" << label << "\"];\n";
    }
    out << "}\n";
    return out.str();
}

}  // namespace redip
