#include "redip/inference.hpp"

#include "redip/constructions.hpp"
#include "redip/errors.hpp"
#include "redip/guard_dfa.hpp"

#include <algorithm>

namespace redip {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

class Translator {
public:
    std::vector<TranslationStep> steps;

    Pga run(const Program& p, const Pga& a) {
        const Alphabet& alphabet = a.alphabet();
        return std::visit(
            overloaded{
                [&](const SetZero& s) { return record("label substitution", label_subst_one(a, s.var)); },
                [&](const IncrConst& s) {
                    return record("concatenation", concat(a, build_dist_pga(Dirac{s.n}, s.var, alphabet)));
                },
                [&](const IncrDist& s) {
                    return record("concatenation", concat(a, build_dist_pga(s.dist, s.var, alphabet)));
                },
                [&](const IncrVar& s) {
                    Pga gadget = increment_by_variable_gadget(alphabet, s.var, s.source);
                    return record("transition substitution", transition_subst(a, s.source, gadget));
                },
                [&](const IncrIid& s) {
                    Pga gadget = concat(single_letter(alphabet, s.count), build_dist_pga(s.dist, s.var, alphabet));
                    return record("transition substitution", transition_subst(a, s.count, gadget));
                },
                [&](const Decr& s) { return record("decrement", decrement(a, s.var)); },
                [&](const Observe& s) {
                    return record("product", product(a, build_guard_dfa(s.guard, alphabet)));
                },
                [&](const Choice& s) {
                    Pga lhs = run(*s.lhs, a);
                    Pga rhs = run(*s.rhs, a);
                    return record("union", weighted_union(lhs, rhs, s.p, 1 - s.p));
                },
                [&](const IfElse& s) {
                    Pga yes = record("product", product(a, build_guard_dfa(s.guard, alphabet)));
                    Pga no = record("product", product(a, build_guard_dfa(!s.guard, alphabet)));
                    Pga lhs = run(*s.then_branch, yes);
                    Pga rhs = run(*s.else_branch, no);
                    return record("union", weighted_union(lhs, rhs, 1, 1));
                },
                [&](const Seq& s) { return run(*s.second, run(*s.first, a)); },
            },
            p.node);
    }

private:
    Pga record(const char* what, const Pga& raw) {
        Pga trimmed = trim(raw);
        steps.push_back({what, raw.size(), trimmed.size()});
        return trimmed;
    }
};

void require_variables(const Program& p, const Alphabet& alphabet) {
    auto check = [&](const std::string& v) {
        if (!alphabet.contains(v)) throw AlphabetMismatch("prior does not mention program variable '" + v + "'");
    };
    std::visit(overloaded{
                   [&](const SetZero& s) { check(s.var); },
                   [&](const IncrConst& s) { check(s.var); },
                   [&](const IncrDist& s) { check(s.var); },
                   [&](const IncrVar& s) {
                       check(s.var);
                       check(s.source);
                   },
                   [&](const IncrIid& s) {
                       check(s.var);
                       check(s.count);
                   },
                   [&](const Decr& s) { check(s.var); },
                   [&](const Observe& s) {
                       for (const auto& v : variables(s.guard)) check(v);
                   },
                   [&](const Choice& s) {
                       require_variables(*s.lhs, alphabet);
                       require_variables(*s.rhs, alphabet);
                   },
                   [&](const IfElse& s) {
                       for (const auto& v : variables(s.guard)) check(v);
                       require_variables(*s.then_branch, alphabet);
                       require_variables(*s.else_branch, alphabet);
                   },
                   [&](const Seq& s) {
                       require_variables(*s.first, alphabet);
                       require_variables(*s.second, alphabet);
                   },
               },
               p.node);
}

}  // namespace

std::size_t Translation::max_pre_trim_size() const {
    std::size_t best = 0;
    for (const auto& s : steps) best = std::max(best, s.pre_trim_size);
    return best;
}

Pga dirac_prior(const Alphabet& alphabet) {
    PgaBuilder b(alphabet);
    b.add_state(1, 1);
    return b.build();
}

Translation translate_traced(const Program& p, const Pga& prior) {
    require_variables(p, prior.alphabet());
    Translator t;
    Pga result = t.run(p, prior);
    return {std::move(result), std::move(t.steps)};
}

Pga translate(const Program& p, const Pga& prior) { return translate_traced(p, prior).result; }

Inference infer(const Program& p, const Pga& prior) {
    ExtRational prior_mass = mass(prior);
    if (prior_mass.is_infinite()) throw InfiniteMass("prior has infinite mass");
    Pga unnormalized = translate(p, prior);
    ExtRational nc = mass(unnormalized);
    if (nc.is_infinite()) throw InfiniteMass("posterior has infinite mass");
    if (nc.value() == 0) throw InfeasibleObservation("the observations have probability 0");
    Rational constant = nc.value();
    Pga posterior = scale_initial(unnormalized, 1 / constant);
    return {std::move(unnormalized), std::move(posterior), constant, prior_mass.value() - constant};
}

Rational guard_probability(const Pga& a, const Guard& phi) {
    ExtRational m = mass(product(a, build_guard_dfa(phi, a.alphabet())));
    if (m.is_infinite()) throw InfiniteMass("guard probability diverges");
    return m.value();
}

std::vector<Rational> marginal(const Pga& a, const std::string& var, std::uint64_t upto) {
    a.alphabet().index_of(var);
    Pga only = a;
    for (const auto& other : a.alphabet().names())
        if (other != var) only = label_subst_one(only, other);
    only = trim(only);
    std::vector<Rational> out;
    for (std::uint64_t k = 0; k <= upto; ++k) out.push_back(guard_probability(only, equal_to(var, k)));
    return out;
}

Pga align_prior(const Pga& prior, const Alphabet& program_alphabet) {
    return prior.over(merge(program_alphabet, prior.alphabet()));
}

}  // namespace redip
