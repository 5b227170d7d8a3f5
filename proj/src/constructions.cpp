#include "redip/constructions.hpp"

#include "redip/errors.hpp"

namespace redip {

namespace {

void require_same_alphabet(const Pga& a, const Pga& b, const char* what) {
    if (!(a.alphabet() == b.alphabet())) throw AlphabetMismatch(std::string(what) + ": alphabets differ");
}

// Copies the states and transitions of a into b; returns the offset.
StateId append_states(PgaBuilder& b, const Pga& a) {
    StateId offset = b.add_states(a.num_states());
    for (const auto& e : a.edges()) b.add_edge(offset + e.src, offset + e.dst, e.weight, e.symbol);
    return offset;
}

}  // namespace

Pga label_subst_one(const Pga& a, const std::string& var) {
    std::size_t x = a.alphabet().index_of(var);
    PgaBuilder b(a.alphabet());
    b.add_states(a.num_states());
    for (StateId q = 0; q < a.num_states(); ++q) {
        b.set_initial(q, a.initial(q));
        b.set_final(q, a.final_weight(q));
    }
    for (const auto& e : a.edges()) b.add_edge(e.src, e.dst, e.weight, e.symbol == x ? Symbol{} : e.symbol);
    return b.build();
}

Pga label_subst_zero(const Pga& a, const std::string& var) {
    std::size_t x = a.alphabet().index_of(var);
    PgaBuilder b(a.alphabet());
    b.add_states(a.num_states());
    for (StateId q = 0; q < a.num_states(); ++q) {
        b.set_initial(q, a.initial(q));
        b.set_final(q, a.final_weight(q));
    }
    for (const auto& e : a.edges())
        if (e.symbol != x) b.add_edge(e.src, e.dst, e.weight, e.symbol);
    return b.build();
}

Pga concat(const Pga& a1, const Pga& a2) {
    require_same_alphabet(a1, a2, "concatenation");
    PgaBuilder b(a1.alphabet());
    StateId o1 = append_states(b, a1);
    StateId o2 = append_states(b, a2);
    for (StateId q = 0; q < a1.num_states(); ++q) b.set_initial(o1 + q, a1.initial(q));
    for (StateId q = 0; q < a2.num_states(); ++q) b.set_final(o2 + q, a2.final_weight(q));
    for (StateId q = 0; q < a1.num_states(); ++q) {
        if (a1.final_weight(q) == 0) continue;
        for (StateId s = 0; s < a2.num_states(); ++s)
            if (a2.initial(s) != 0) b.add_edge(o1 + q, o2 + s, a1.final_weight(q) * a2.initial(s));
    }
    return b.build();
}

Pga weighted_union(const Pga& a1, const Pga& a2, const Rational& p, const Rational& q) {
    require_same_alphabet(a1, a2, "union");
    if (p < 0 || q < 0) throw InvalidWeight("union weights must be nonnegative");
    PgaBuilder b(a1.alphabet());
    StateId o1 = append_states(b, a1);
    StateId o2 = append_states(b, a2);
    for (StateId s = 0; s < a1.num_states(); ++s) {
        b.set_initial(o1 + s, p * a1.initial(s));
        b.set_final(o1 + s, a1.final_weight(s));
    }
    for (StateId s = 0; s < a2.num_states(); ++s) {
        b.set_initial(o2 + s, q * a2.initial(s));
        b.set_final(o2 + s, a2.final_weight(s));
    }
    return b.build();
}

Pga transition_subst(const Pga& a, const std::string& var, const Pga& gadget) {
    require_same_alphabet(a, gadget, "transition substitution");
    std::size_t y = a.alphabet().index_of(var);
    PgaBuilder b(a.alphabet());
    b.add_states(a.num_states());
    for (StateId q = 0; q < a.num_states(); ++q) {
        b.set_initial(q, a.initial(q));
        b.set_final(q, a.final_weight(q));
    }
    for (const auto& e : a.edges()) {
        if (e.symbol != y) {
            b.add_edge(e.src, e.dst, e.weight, e.symbol);
            continue;
        }
        StateId copy = append_states(b, gadget);
        for (StateId s = 0; s < gadget.num_states(); ++s) {
            if (gadget.initial(s) != 0) b.add_edge(e.src, copy + s, e.weight * gadget.initial(s));
            if (gadget.final_weight(s) != 0) b.add_edge(copy + s, e.dst, gadget.final_weight(s));
        }
    }
    return b.build();
}

Pga product(const Pga& a, const GuardDfa& dfa) {
    if (!(a.alphabet() == dfa.alphabet())) throw AlphabetMismatch("product: alphabets differ");
    std::size_t k = dfa.num_states();
    auto id = [k](StateId q, std::size_t s) { return q * k + s; };
    PgaBuilder b(a.alphabet());
    b.add_states(a.num_states() * k);
    for (StateId q = 0; q < a.num_states(); ++q) {
        b.set_initial(id(q, dfa.initial()), a.initial(q));
        for (std::size_t s = 0; s < k; ++s)
            if (dfa.accepting(s)) b.set_final(id(q, s), a.final_weight(q));
    }
    for (const auto& e : a.edges()) {
        for (std::size_t s = 0; s < k; ++s) {
            std::size_t t = e.symbol ? dfa.next(s, *e.symbol) : s;
            b.add_edge(id(e.src, s), id(e.dst, t), e.weight, e.symbol);
        }
    }
    return b.build();
}

Pga decrement(const Pga& a, const std::string& var) {
    std::size_t x = a.alphabet().index_of(var);
    GuardDfa positive = build_guard_dfa(greater_than(var, 0), a.alphabet());
    // Two states: the non-accepting initial one and the accepting one.
    std::size_t k = positive.num_states();
    std::size_t s = positive.initial();
    std::size_t t = positive.next(s, x);
    Pga filtered = product(a, positive);

    PgaBuilder b(a.alphabet());
    b.add_states(filtered.num_states());
    for (StateId q = 0; q < filtered.num_states(); ++q) {
        b.set_initial(q, filtered.initial(q));
        b.set_final(q, filtered.final_weight(q));
    }
    for (const auto& e : filtered.edges()) {
        bool first_x = e.symbol == x && e.src % k == s && e.dst % k == t;
        b.add_edge(e.src, e.dst, e.weight, first_x ? Symbol{} : e.symbol);
    }
    return weighted_union(b.build(), label_subst_zero(a, var), 1, 1);
}

Pga single_letter(const Alphabet& alphabet, const std::string& var) {
    PgaBuilder b(alphabet);
    StateId s = b.add_state(1, 0);
    StateId t = b.add_state(0, 1);
    b.add_edge(s, t, 1, alphabet.index_of(var));
    return b.build();
}

Pga increment_by_variable_gadget(const Alphabet& alphabet, const std::string& x, const std::string& y) {
    PgaBuilder b(alphabet);
    StateId s0 = b.add_state(1, 0);
    StateId s1 = b.add_state();
    StateId s2 = b.add_state(0, 1);
    b.add_edge(s0, s1, 1, alphabet.index_of(y));
    b.add_edge(s1, s2, 1, alphabet.index_of(x));
    return b.build();
}

}  // namespace redip
