#include "redip/oracle.hpp"

#include "redip/errors.hpp"
#include "redip/inference.hpp"
#include "redip/linear.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <random>
#include <thread>
#include <unordered_map>

namespace redip {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// Largest value a finite-support distribution can produce.
std::optional<std::uint64_t> support_bound(const DistSpec& d) {
    return std::visit(overloaded{
                          [](const Geometric& g) -> std::optional<std::uint64_t> {
                              if (g.p == 1) return 0;
                              return std::nullopt;
                          },
                          [](const NegBinomial& g) -> std::optional<std::uint64_t> {
                              if (g.n == 0 || g.p == 1) return 0;
                              return std::nullopt;
                          },
                          [](const Bernoulli&) -> std::optional<std::uint64_t> { return 1; },
                          [](const Dirac& g) -> std::optional<std::uint64_t> { return g.n; },
                          [](const Uniform& g) -> std::optional<std::uint64_t> { return g.m - 1; },
                          [](const Binomial& g) -> std::optional<std::uint64_t> { return g.n; },
                          [](const Custom&) -> std::optional<std::uint64_t> { return std::nullopt; },
                      },
                      d);
}

Config continue_with(std::vector<ProgramPtr> rest, Valuation sigma) {
    if (rest.empty()) return Terminated{std::move(sigma)};
    return Running{std::move(rest), std::move(sigma)};
}

std::vector<ProgramPtr> push_front(std::vector<ProgramPtr> rest, std::initializer_list<ProgramPtr> heads) {
    rest.insert(rest.begin(), heads.begin(), heads.end());
    return rest;
}

}  // namespace

SmallStep::SmallStep(Alphabet alphabet, std::uint64_t trunc) : alphabet_(std::move(alphabet)), trunc_(trunc) {}

const SmallStep::Table& SmallStep::table(const DistSpec& d) {
    for (const auto& [spec, t] : tables_)
        if (spec == d) return t;
    Alphabet single({"v"});
    Pga a = build_dist_pga(d, "v", single);
    std::uint64_t bound = support_bound(d).value_or(trunc_);
    Table t;
    Rational total = 0;
    for (std::uint64_t n = 0; n <= bound; ++n) {
        t.pmf.push_back(coefficient(a, Valuation(std::vector<std::uint64_t>{n})));
        total += t.pmf.back();
    }
    t.tail = 1 - total;
    tables_.emplace_back(d, std::move(t));
    return tables_.back().second;
}

StepDistribution SmallStep::step(const Config& c) {
    const auto* running = std::get_if<Running>(&c);
    if (!running) throw Error("step: configuration is absorbing");
    StepDistribution out;
    out.residual = 0;
    Valuation sigma = running->sigma;
    if (running->continuation.empty()) {
        out.successors.emplace_back(Rational(1), Terminated{sigma});
        return out;
    }
    const Program& head = *running->continuation.front();
    std::vector<ProgramPtr> rest(running->continuation.begin() + 1, running->continuation.end());
    auto at = [&](const std::string& v) -> std::uint64_t& { return sigma[alphabet_.index_of(v)]; };
    auto deterministic = [&](Config next) { out.successors.emplace_back(Rational(1), std::move(next)); };
    auto branch = [&](const Rational& p, const ProgramPtr& body) {
        if (p != 0) out.successors.emplace_back(p, Running{push_front(rest, {body}), sigma});
    };

    std::visit(overloaded{
                   [&](const SetZero& s) {
                       at(s.var) = 0;
                       deterministic(continue_with(rest, sigma));
                   },
                   [&](const IncrConst& s) {
                       at(s.var) += s.n;
                       deterministic(continue_with(rest, sigma));
                   },
                   [&](const IncrVar& s) {
                       at(s.var) += at(s.source);
                       deterministic(continue_with(rest, sigma));
                   },
                   [&](const Decr& s) {
                       if (at(s.var) > 0) --at(s.var);
                       deterministic(continue_with(rest, sigma));
                   },
                   [&](const IncrDist& s) {
                       const Table& t = table(s.dist);
                       std::size_t x = alphabet_.index_of(s.var);
                       for (std::uint64_t n = 0; n < t.pmf.size(); ++n) {
                           if (t.pmf[n] == 0) continue;
                           Valuation next = sigma;
                           next[x] += n;
                           out.successors.emplace_back(t.pmf[n], continue_with(rest, std::move(next)));
                       }
                       out.residual = t.tail;
                   },
                   [&](const IncrIid&) -> void {
                       throw UnsupportedIid("the operational semantics does not cover iid increments");
                   },
                   [&](const Observe& s) {
                       if (guard_satisfies(alphabet_, sigma, s.guard))
                           deterministic(continue_with(rest, sigma));
                       else
                           deterministic(Violation{});
                   },
                   [&](const Choice& s) {
                       branch(s.p, s.lhs);
                       branch(1 - s.p, s.rhs);
                   },
                   [&](const IfElse& s) {
                       bool holds = guard_satisfies(alphabet_, sigma, s.guard);
                       deterministic(Running{push_front(rest, {holds ? s.then_branch : s.else_branch}), sigma});
                   },
                   [&](const Seq& s) { deterministic(Running{push_front(rest, {s.first, s.second}), sigma}); },
               },
               head.node);
    return out;
}

StepDistribution step(const Config& c, const Alphabet& alphabet, std::uint64_t trunc) {
    SmallStep s(alphabet, trunc);
    return s.step(c);
}

PointPrior finite_prior(const Pga& prior) {
    Pga t = trim(prior);
    std::vector<std::vector<std::size_t>> adjacency(t.num_states());
    for (const auto& e : t.edges()) {
        if (e.src == e.dst) throw Error("prior has infinite support (cycle through a useful state)");
        adjacency[e.src].push_back(e.dst);
    }
    for (const auto& component : strongly_connected_components(adjacency))
        if (component.size() > 1) throw Error("prior has infinite support (cycle through a useful state)");
    PointPrior out;
    for (auto& [v, w] : aggregate_paths(enumerate_paths(t, t.num_states())))
        if (w != 0) out.emplace_back(v, w);
    return out;
}

EnumerationReport enumerate(const Program& p, const Alphabet& alphabet, const PointPrior& prior,
                            std::uint64_t trunc) {
    if (contains_iid(p)) throw UnsupportedIid("enumeration does not cover iid increments");
    SmallStep semantics(alphabet, trunc);

    // Every step removes at least one AST node from the continuation, so
    // processing configurations by decreasing node count visits each one
    // after all of its predecessors.
    std::unordered_map<const Program*, std::size_t> nodes;
    std::function<std::size_t(const Program&)> count = [&](const Program& q) -> std::size_t {
        if (auto it = nodes.find(&q); it != nodes.end()) return it->second;
        std::size_t n = 1 + std::visit(overloaded{
                                           [&](const Choice& s) { return count(*s.lhs) + count(*s.rhs); },
                                           [&](const IfElse& s) {
                                               return count(*s.then_branch) + count(*s.else_branch);
                                           },
                                           [&](const Seq& s) { return count(*s.first) + count(*s.second); },
                                           [](const auto&) { return std::size_t{0}; },
                                       },
                                       q.node);
        nodes.emplace(&q, n);
        return n;
    };
    auto potential = [&](const Running& r) {
        std::size_t n = 0;
        for (const auto& q : r.continuation) n += count(*q);
        return n;
    };
    using Key = std::pair<std::vector<const Program*>, Valuation>;
    auto key_of = [](const Running& r) {
        Key k;
        k.second = r.sigma;
        for (const auto& q : r.continuation) k.first.push_back(q.get());
        return k;
    };

    std::map<std::size_t, std::map<Key, std::pair<Running, Rational>>, std::greater<>> buckets;
    EnumerationReport report;
    report.violation = 0;
    report.residual = 0;
    auto deliver = [&](const Config& c, const Rational& prob) {
        std::visit(overloaded{
                       [&](const Running& r) {
                           auto& slot = buckets[potential(r)];
                           auto [it, inserted] = slot.try_emplace(key_of(r), r, prob);
                           if (!inserted) it->second.second += prob;
                       },
                       [&](const Terminated& t) { report.terminal[t.sigma] += prob; },
                       [&](const Violation&) { report.violation += prob; },
                   },
                   c);
    };

    ProgramPtr start(std::shared_ptr<const Program>(), &p);
    for (const auto& [sigma, w] : prior) deliver(Running{{start}, sigma}, w);
    while (!buckets.empty()) {
        auto bucket = std::move(buckets.begin()->second);
        buckets.erase(buckets.begin());
        for (auto& [key, entry] : bucket) {
            const auto& [config, prob] = entry;
            StepDistribution d = semantics.step(config);
            report.residual += prob * d.residual;
            for (const auto& [q, next] : d.successors) deliver(next, prob * q);
        }
    }
    return report;
}

// ---------------------------------------------------------------------------
// Monte Carlo

namespace {

using Engine = std::mt19937_64;

// Samples words of a finite-mass automaton in proportion to their weight by
// walking with transition probabilities M(q,t) B(t) / B(q).
class PgaWalker {
public:
    explicit PgaWalker(const Pga& a) : arity_(a.alphabet().size()) {
        Pga t = trim(a);
        FixpointSystem sys;
        sys.size = t.num_states();
        sys.rows.resize(sys.size);
        sys.rhs = t.final_weights();
        std::vector<std::map<std::size_t, Rational>> merged(sys.size);
        for (const auto& e : t.edges()) merged[e.src][e.dst] += e.weight;
        for (std::size_t q = 0; q < sys.size; ++q)
            for (auto& [d, w] : merged[q]) sys.rows[q].emplace_back(d, w);
        auto b = least_solution_elimination(sys);
        if (!b) b = least_solution_lp(sys, t.initial_weights());
        if (!b) throw InfiniteMass("cannot sample from an automaton with infinite mass");

        std::vector<double> start;
        bool any = false;
        for (StateId q = 0; q < t.num_states(); ++q) {
            Rational w = t.initial(q) * (*b)[q];
            any = any || w != 0;
            start.push_back(w.get_d());
        }
        if (!any) throw ZeroMass("cannot sample from an automaton with zero mass");
        start_ = std::discrete_distribution<std::size_t>(start.begin(), start.end());

        moves_.resize(t.num_states());
        choice_.resize(t.num_states());
        for (StateId q = 0; q < t.num_states(); ++q) {
            std::vector<double> weights{t.final_weight(q).get_d()};
            moves_[q].push_back({q, std::nullopt, true});
            for (const auto& e : t.edges()) {
                if (e.src != q) continue;
                weights.push_back(Rational(e.weight * (*b)[e.dst]).get_d());
                moves_[q].push_back({e.dst, e.symbol, false});
            }
            choice_[q] = std::discrete_distribution<std::size_t>(weights.begin(), weights.end());
        }
    }

    Valuation sample(Engine& rng) {
        Valuation v(arity_);
        StateId q = start_(rng);
        for (;;) {
            const Move& m = moves_[q][choice_[q](rng)];
            if (m.stop) return v;
            if (m.symbol) ++v[*m.symbol];
            q = m.dst;
        }
    }

private:
    struct Move {
        StateId dst;
        Symbol symbol;
        bool stop;
    };
    std::size_t arity_;
    std::discrete_distribution<std::size_t> start_;
    std::vector<std::discrete_distribution<std::size_t>> choice_;
    std::vector<std::vector<Move>> moves_;
};

class Interpreter {
public:
    Interpreter(const Alphabet& alphabet, std::map<std::string, PgaWalker> custom)
        : alphabet_(alphabet), custom_(std::move(custom)) {}

    // Returns false when an observation fails.
    bool run(const Program& p, Valuation& sigma, Engine& rng) {
        auto at = [&](const std::string& v) -> std::uint64_t& { return sigma[alphabet_.index_of(v)]; };
        return std::visit(overloaded{
                              [&](const SetZero& s) { return at(s.var) = 0, true; },
                              [&](const IncrConst& s) { return at(s.var) += s.n, true; },
                              [&](const IncrVar& s) { return at(s.var) += at(s.source), true; },
                              [&](const Decr& s) {
                                  if (at(s.var) > 0) --at(s.var);
                                  return true;
                              },
                              [&](const IncrDist& s) { return at(s.var) += draw(s.dist, rng), true; },
                              [&](const IncrIid& s) {
                                  std::uint64_t times = at(s.count);
                                  for (std::uint64_t i = 0; i < times; ++i) at(s.var) += draw(s.dist, rng);
                                  return true;
                              },
                              [&](const Observe& s) { return guard_satisfies(alphabet_, sigma, s.guard); },
                              [&](const Choice& s) {
                                  bool left = std::bernoulli_distribution(s.p.get_d())(rng);
                                  return run(left ? *s.lhs : *s.rhs, sigma, rng);
                              },
                              [&](const IfElse& s) {
                                  bool holds = guard_satisfies(alphabet_, sigma, s.guard);
                                  return run(holds ? *s.then_branch : *s.else_branch, sigma, rng);
                              },
                              [&](const Seq& s) { return run(*s.first, sigma, rng) && run(*s.second, sigma, rng); },
                          },
                          p.node);
    }

private:
    const Alphabet& alphabet_;
    std::map<std::string, PgaWalker> custom_;

    std::uint64_t draw(const DistSpec& d, Engine& rng) {
        return std::visit(
            overloaded{
                [&](const Geometric& g) -> std::uint64_t {
                    if (g.p == 1) return 0;
                    return std::geometric_distribution<std::uint64_t>(g.p.get_d())(rng);
                },
                [&](const Bernoulli& g) -> std::uint64_t { return std::bernoulli_distribution(g.p.get_d())(rng); },
                [&](const Dirac& g) -> std::uint64_t { return g.n; },
                [&](const Uniform& g) -> std::uint64_t {
                    return std::uniform_int_distribution<std::uint64_t>(0, g.m - 1)(rng);
                },
                [&](const Binomial& g) -> std::uint64_t {
                    return std::binomial_distribution<std::uint64_t>(g.n, g.p.get_d())(rng);
                },
                [&](const NegBinomial& g) -> std::uint64_t {
                    if (g.n == 0 || g.p == 1) return 0;
                    return std::negative_binomial_distribution<std::uint64_t>(g.n, g.p.get_d())(rng);
                },
                [&](const Custom& g) -> std::uint64_t { return custom_.at(g.path).sample(rng)[0]; },
            },
            d);
    }
};

constexpr std::uint64_t kChunks = 16;

}  // namespace

SampleReport mc_sample(const Program& p, const Pga& prior, std::uint64_t seed, std::uint64_t n) {
    const Alphabet& alphabet = prior.alphabet();
    PgaWalker prior_walker(prior);
    std::map<std::string, PgaWalker> custom;
    for (const auto& d : distributions(p))
        if (const auto* c = std::get_if<Custom>(&d))
            custom.try_emplace(c->path, build_dist_pga(*c, "v", Alphabet({"v"})));

    std::vector<SampleReport> partial(kChunks);
    auto run_chunk = [&](std::uint64_t chunk) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(chunk)};
        Engine rng(seq);
        PgaWalker walker = prior_walker;
        Interpreter interp(alphabet, custom);
        SampleReport& r = partial[chunk];
        r.samples = n / kChunks + (chunk < n % kChunks ? 1 : 0);
        for (std::uint64_t i = 0; i < r.samples; ++i) {
            Valuation sigma = walker.sample(rng);
            if (interp.run(p, sigma, rng))
                ++r.terminal[sigma];
            else
                ++r.violations;
        }
    };

    std::atomic<std::uint64_t> next{0};
    auto worker = [&] {
        for (std::uint64_t c; (c = next++) < kChunks;) run_chunk(c);
    };
    unsigned threads = std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(), kChunks));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    SampleReport total;
    for (const auto& r : partial) {
        total.samples += r.samples;
        total.violations += r.violations;
        for (const auto& [v, k] : r.terminal) total.terminal[v] += k;
    }
    return total;
}

Verdict compare(const Program& p, const Pga& prior, std::uint64_t trunc) {
    if (contains_iid(p)) throw UnsupportedIid("enumeration does not cover iid increments");
    const Alphabet& alphabet = prior.alphabet();
    EnumerationReport oracle = enumerate(p, alphabet, finite_prior(prior), trunc);
    Pga unnormalized = translate(p, prior);

    Verdict v;
    v.residual = oracle.residual;
    v.worst_discrepancy = 0;
    auto check = [&](const std::string& what, const Rational& value, const Rational& lower) {
        ++v.checked;
        Rational gap = value - lower;
        if (gap < 0 || gap > oracle.residual)
            v.failures.push_back(what + ": automaton " + to_string(value) + ", oracle lower bound " +
                                 to_string(lower) + ", residual " + to_string(oracle.residual));
        if (gap < 0) gap = -gap;
        if (gap > v.worst_discrepancy) v.worst_discrepancy = gap;
    };

    if (!oracle.terminal.empty()) {
        Valuation bound(alphabet.size());
        for (const auto& [sigma, w] : oracle.terminal)
            for (std::size_t i = 0; i < bound.arity(); ++i) bound[i] = std::max(bound[i], sigma[i]);
        for (const auto& [sigma, c] : coefficient_table(unnormalized, bound)) {
            auto it = oracle.terminal.find(sigma);
            check("coefficient at " + to_string(alphabet, sigma), c, it == oracle.terminal.end() ? Rational(0) : it->second);
        }
    }

    Rational terminal_total = 0;
    for (const auto& [sigma, w] : oracle.terminal) terminal_total += w;
    ExtRational nc = mass(unnormalized);
    ExtRational prior_mass = mass(prior);
    if (nc.is_infinite() || prior_mass.is_infinite()) {
        v.failures.push_back("automaton mass is infinite");
    } else {
        check("normalizing constant", nc.value(), terminal_total);
        check("violation mass", prior_mass.value() - nc.value(), oracle.violation);
    }
    v.pass = v.failures.empty();
    return v;
}

}  // namespace redip
