#include "ravkit/critique.hpp"

#include "ravkit/errors.hpp"
#include "ravkit/ingest/scope_file.hpp"
#include "json_output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <random>
#include <sstream>
#include <tuple>

namespace ravkit::critique {

using nlohmann::json;

namespace {

std::string scientific(double v)
{
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.3e", v);
    return buffer;
}

json exact(const Rational& v) { return to_string(v); }

std::array<Count, 5> class_counts(const Scope& s, MetaClass m)
{
    std::array<Count, 5> out{};
    std::size_t n = 0;
    for (ControlClass c : kAllControlClasses) {
        if (meta_class(c) == m) out[n++] = s.controls[c];
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool same_counts(const Scope& a, const Scope& b)
{
    return a.porosity == b.porosity && a.controls == b.controls && a.limitations == b.limitations;
}

}  // namespace

std::string_view verdict_name(Verdict v) { return v == Verdict::holds ? "holds" : "violated"; }

std::string render_finding(const CritiqueFinding& f)
{
    const json doc{
        {"schema", std::string(kFindingSchema)},
        {"kind", f.kind},
        {"inputs", detail::with_fixed_reals(f.inputs)},
        {"scores", detail::with_fixed_reals(f.scores)},
        {"verdict", std::string(verdict_name(f.verdict))},
        {"narrative", f.narrative},
    };
    return detail::dump(doc);
}

std::string render_findings(const std::vector<CritiqueFinding>& findings)
{
    json all = json::array();
    for (const auto& f : findings) {
        all.push_back(json{
            {"schema", std::string(kFindingSchema)},
            {"kind", f.kind},
            {"inputs", detail::with_fixed_reals(f.inputs)},
            {"scores", detail::with_fixed_reals(f.scores)},
            {"verdict", std::string(verdict_name(f.verdict))},
            {"narrative", f.narrative},
        });
    }
    return detail::dump(all);
}

std::string render_findings_text(const std::vector<CritiqueFinding>& findings)
{
    std::ostringstream out;
    for (std::size_t i = 0; i < findings.size(); ++i) {
        const auto& f = findings[i];
        if (i > 0) out << '\n';
        out << "finding " << (i + 1) << ": " << f.kind << " (" << verdict_name(f.verdict) << ")\n";
        out << "  " << f.narrative << '\n';
        out << "  scores: " << detail::dump(detail::with_fixed_reals(f.scores), -1) << '\n';
        out << "  inputs: " << detail::dump(detail::with_fixed_reals(f.inputs), -1) << '\n';
    }
    if (findings.empty()) out << "no findings\n";
    return out.str();
}

Scope toy_scope()
{
    Scope s;
    s.id = "toy";
    s.vector = "internet";
    s.index = "ip";
    s.porosity = {1, 1, 0};
    s.controls[ControlClass::authentication] = 1;
    for (LimitationKind k : kAllLimitationKinds) s.limitations[k] = 1;
    return s;
}

// ---------------------------------------------------------------------------
// Control permutations

CritiqueFinding permutation_demo(const Scope& scope, ControlClass from, ControlClass to)
{
    if (from == to) throw InputError("permutation_demo needs two different control classes");
    Scope swapped = scope;
    swapped.id = scope.id + "-swapped";
    std::swap(swapped.controls[from], swapped.controls[to]);

    const RavBreakdown before = actual_security(scope);
    const RavBreakdown after = actual_security(swapped);

    const bool same_meta = meta_class(from) == meta_class(to);
    const bool equal_counts = scope.controls[from] == scope.controls[to];
    const bool unchanged = before.actsec == after.actsec && before.seclim_sum == after.seclim_sum;
    const bool aggregates_identical = before.opsec_sum == after.opsec_sum && before.lc_sum == after.lc_sum &&
                                      before.mc_sum == after.mc_sum && before.mc_class_a == after.mc_class_a &&
                                      before.mc_class_b == after.mc_class_b && before.mc_vg == after.mc_vg &&
                                      before.weights == after.weights && before.seclim_sum == after.seclim_sum;
    if ((same_meta || equal_counts) && !(unchanged && aggregates_identical)) {
        throw std::logic_error("permutation invariance failed for a same-meta-class or equal-count swap");
    }

    CritiqueFinding f;
    f.kind = "permutation";
    f.inputs = json{
        {"scope", ingest::scope_to_json(scope)},
        {"from", std::string(control_name(from))},
        {"to", std::string(control_name(to))},
        {"same_meta_class", same_meta},
    };
    f.scores = json{
        {"actsec_before", before.actsec},
        {"actsec_after", after.actsec},
        {"delta", after.actsec - before.actsec},
        {"seclim_sum_before", exact(before.seclim_sum)},
        {"seclim_sum_after", exact(after.seclim_sum)},
        {"mc_class_a_before", exact(before.mc_class_a)},
        {"mc_class_a_after", exact(after.mc_class_a)},
        {"mc_class_b_before", exact(before.mc_class_b)},
        {"mc_class_b_after", exact(after.mc_class_b)},
        {"intermediates_identical", aggregates_identical},
    };
    f.verdict = unchanged ? Verdict::holds : Verdict::violated;

    std::string why;
    if (equal_counts) {
        why = "The two classes carry the same count, so the swap changes nothing.";
    } else if (same_meta) {
        why = "Both classes belong to the same meta-class, and the pipeline only sees missing controls "
              "through per-meta-class sums, so every rational intermediate is unchanged.";
    } else if (unchanged) {
        why = "The classes sit in different meta-classes, yet the score did not move: the weakness and "
              "concern weights traded places while the weakness and concern counts are equal, which leaves "
              "the limitation sum intact. This invariance was observed, not predicted.";
    } else {
        why = "The classes sit in different meta-classes. Moving the missing controls between the two "
              "meta-class sums reweights weaknesses against concerns and the score moves.";
    }
    f.narrative = "OSSTMM 3 (chapter 4, rav) values every control class as one tenth of a pore, so a "
                  "control's identity only matters through its meta-class. " +
                  why;
    return f;
}

// ---------------------------------------------------------------------------
// Collision search

namespace {

using Multiset = std::array<Count, 5>;

std::vector<Multiset> nondecreasing_multisets(Count bound)
{
    std::vector<Multiset> out;
    Multiset m{};
    auto rec = [&](auto&& self, std::size_t pos, Count low) -> void {
        if (pos == m.size()) {
            out.push_back(m);
            return;
        }
        for (Count v = low; v <= bound; ++v) {
            m[pos] = v;
            self(self, pos + 1, v);
        }
    };
    rec(rec, 0, 0);
    return out;
}

Count missing(const Multiset& m, Count opsec)
{
    Count total = 0;
    for (Count v : m) total += opsec > v ? opsec - v : 0;
    return total;
}

Count sum_of(const Multiset& m)
{
    Count total = 0;
    for (Count v : m) total += v;
    return total;
}

// Everything the pipeline depends on: V + A, T, the control sum and the two
// meta-class missing-control sums. Configurations sharing a context and a
// limitation vector are indistinguishable to the score.
struct Context {
    Count va = 0;
    Count trust = 0;
    Count lc_sum = 0;
    Count mc_a = 0;
    Count mc_b = 0;
    Multiset class_a{};
    Multiset class_b{};
};

struct Entry {
    double actsec;
    std::uint64_t id;
};

std::uint64_t power(std::uint64_t base, unsigned exponent)
{
    std::uint64_t r = 1;
    for (unsigned i = 0; i < exponent; ++i) r *= base;
    return r;
}

constexpr std::uint64_t kMaxContextCandidates = 20'000'000;
constexpr std::uint64_t kMaxEvaluations = 30'000'000;

class Enumeration {
public:
    explicit Enumeration(const CollisionBounds& b) : bounds_(b), base_(b.limitation + 1)
    {
        lim_count_ = power(base_, kLimitationKindCount);
        const std::vector<Multiset> sets = nondecreasing_multisets(b.control);
        std::map<std::tuple<Count, Count, Count, Count, Count>, std::size_t> seen;
        for (Count va = 0; va <= 2 * b.porosity; ++va) {
            for (Count t = 0; t <= b.porosity; ++t) {
                const Count o = va + t;
                for (const Multiset& a : sets) {
                    const Count mc_a = missing(a, o);
                    const Count lc_a = sum_of(a);
                    for (const Multiset& bset : sets) {
                        const Count mc_b = missing(bset, o);
                        const Count lc = lc_a + sum_of(bset);
                        auto key = std::make_tuple(va, t, lc, mc_a, mc_b);
                        if (seen.emplace(key, contexts_.size()).second) {
                            contexts_.push_back({va, t, lc, mc_a, mc_b, a, bset});
                        }
                    }
                }
            }
        }
    }

    const Context& context(std::uint64_t id) const { return contexts_[id / lim_count_]; }

    LimitationCounts limitations(std::uint64_t id) const
    {
        std::uint64_t rest = id % lim_count_;
        LimitationCounts out;
        for (std::size_t k = kLimitationKindCount; k-- > 0;) {
            out.counts[k] = rest % base_;
            rest /= base_;
        }
        return out;
    }

    /// (V + A, T, limitation index): the parts a collision must differ in.
    std::tuple<Count, Count, std::uint64_t> structure(std::uint64_t id) const
    {
        const Context& c = context(id);
        return {c.va, c.trust, id % lim_count_};
    }

    Scope scope(std::uint64_t id, Count visibility_first = 1) const
    {
        const Context& c = context(id);
        Scope s;
        s.id = "config-" + std::to_string(id);
        const Count v = visibility_first ? std::min(c.va, bounds_.porosity) : c.va - std::min(c.va, bounds_.porosity);
        s.porosity = {v, c.va - v, c.trust};
        std::size_t ia = 0;
        std::size_t ib = 0;
        for (ControlClass k : kAllControlClasses) {
            s.controls[k] = meta_class(k) == MetaClass::a ? c.class_a[ia++] : c.class_b[ib++];
        }
        s.limitations = limitations(id);
        return s;
    }

    std::vector<Entry> evaluate() const
    {
        std::vector<Entry> out;
        std::map<Count, double> opsec_base;
        std::map<Count, double> fc_base;
        const Count L = base_;
        for (std::size_t ci = 0; ci < contexts_.size(); ++ci) {
            const Context& c = contexts_[ci];
            const Count o = c.va + c.trust;
            const std::uint64_t first = ci * lim_count_;
            auto [fit, fnew] = fc_base.try_emplace(c.lc_sum, 0.0);
            if (fnew) fit->second = base_value(10, Rational(c.lc_sum));
            const double F = fit->second;
            if (o == 0) {
                out.push_back({combine_actual_security(0.0, F, 0.0), first});
                continue;
            }
            auto [ait, anew] = opsec_base.try_emplace(o, 0.0);
            if (anew) ait->second = base_value(100, Rational(o));
            const double A = ait->second;

            const std::array<Rational, 3> porosity = {Rational(c.va), Rational(0), Rational(c.trust)};
            const Rational opsec(o);
            const Rational mc_a(c.mc_a);
            const Rational mc_b(c.mc_b);
            const Rational mc_sum(c.mc_a + c.mc_b);
            for (Count nv = 0; nv < L; ++nv) {
                for (Count nw = 0; nw < L; ++nw) {
                    for (Count nc = 0; nc < L; ++nc) {
                        const std::array<Rational, kLimitationKindCount> lims = {
                            Rational(nv), Rational(nw), Rational(nc), Rational(0), Rational(0)};
                        const LimitationWeights lw = limitation_weights(porosity, opsec, mc_sum, mc_a, mc_b, lims);
                        const auto& w = lw.weights;
                        const Rational partial = lims[0] * w[0] * w[0] + lims[1] * w[1] * w[1] + lims[2] * w[2] * w[2];
                        const Rational e2 = w[3] * w[3];
                        const Rational a2 = w[4] * w[4];
                        const std::uint64_t prefix = ((nv * L + nw) * L + nc) * L * L;
                        for (Count ne = 0; ne < L; ++ne) {
                            for (Count na = 0; na < L; ++na) {
                                const Rational seclim = partial + ne * e2 + na * a2;
                                const double S = base_value(100, seclim);
                                out.push_back({combine_actual_security(A, F, S), first + prefix + ne * L + na});
                            }
                        }
                    }
                }
            }
        }
        return out;
    }

    std::uint64_t configurations() const
    {
        const std::uint64_t p = bounds_.porosity + 1;
        const std::uint64_t c = power(bounds_.control + 1, kControlClassCount);
        return p * p * p * c * lim_count_ - c * (lim_count_ - 1);
    }

    std::uint64_t expected_evaluations() const
    {
        std::uint64_t zero = 0;
        for (const Context& c : contexts_) zero += (c.va + c.trust == 0) ? 1 : 0;
        return (contexts_.size() - zero) * lim_count_ + zero;
    }

private:
    CollisionBounds bounds_;
    Count base_;
    std::uint64_t lim_count_ = 1;
    std::vector<Context> contexts_;
};

std::string relation_of(const Scope& a, const Scope& b)
{
    if (is_within_meta_class_permutation(a, b)) return "within-meta-class permutation";
    if (a.porosity.visibility + a.porosity.access == b.porosity.visibility + b.porosity.access &&
        a.porosity.trust == b.porosity.trust && a.controls == b.controls && a.limitations == b.limitations) {
        return "visibility-access split";
    }
    return "structural";
}

CritiqueFinding collision_finding(const Scope& a, const Scope& b, double epsilon, const std::string& relation,
                                  const json& extra_inputs)
{
    const double sa = actual_security(a).actsec;
    const double sb = actual_security(b).actsec;
    CritiqueFinding f;
    f.kind = "collision";
    f.inputs = json{
        {"first", ingest::scope_to_json(a)},
        {"second", ingest::scope_to_json(b)},
        {"epsilon", scientific(epsilon)},
        {"relation", relation},
    };
    for (const auto& [k, v] : extra_inputs.items()) f.inputs[k] = v;
    f.scores = json{
        {"actsec_first", sa},
        {"actsec_second", sb},
        {"difference", scientific(std::fabs(sa - sb))},
    };
    f.verdict = Verdict::violated;
    std::string what;
    if (relation == "within-meta-class permutation") {
        what = "The two scopes hold the same controls shuffled inside a meta-class.";
    } else if (relation == "visibility-access split") {
        what = "The two scopes differ only in how the same porosity is split between visibility and access, "
               "which the score never distinguishes.";
    } else {
        what = "The two scopes differ in porosity or limitation structure.";
    }
    f.narrative = "OSSTMM 3 (chapter 4) presents the rav as a summary of an attack surface, yet the score is "
                  "not injective: distinct scopes land on the same value within epsilon " +
                  scientific(epsilon) + ". " + what + " The score alone cannot say which scope was tested.";
    return f;
}

}  // namespace

CollisionSearch collision_search(const CollisionBounds& bounds, double epsilon, std::uint64_t seed,
                                 std::size_t max_findings)
{
    if (!(epsilon >= 0.0)) throw InputError("collision search epsilon must be non-negative");
    CollisionSearch result;
    if (bounds.porosity == 0 && bounds.control == 0 && bounds.limitation == 0) return result;

    const std::uint64_t multisets = [&] {
        std::uint64_t n = 1;  // C(control + 5, 5)
        for (std::uint64_t i = 1; i <= 5; ++i) n = n * (bounds.control + i) / i;
        return n;
    }();
    if (bounds.porosity > 1000 || bounds.control > 1000 || bounds.limitation > 1000 ||
        (2 * bounds.porosity + 1) * (bounds.porosity + 1) * multisets * multisets > kMaxContextCandidates) {
        throw InputError("collision search bounds are too large to enumerate");
    }
    Enumeration en(bounds);
    if (en.expected_evaluations() > kMaxEvaluations) {
        throw InputError("collision search bounds are too large to enumerate (" +
                         std::to_string(en.expected_evaluations()) + " evaluations)");
    }

    std::vector<Entry> entries = en.evaluate();
    std::sort(entries.begin(), entries.end(), [](const Entry& x, const Entry& y) {
        return x.actsec < y.actsec || (x.actsec == y.actsec && x.id < y.id);
    });
    result.stats.configurations = en.configurations();
    result.stats.evaluations = entries.size();

    std::vector<std::pair<std::uint64_t, std::uint64_t>> candidates;
    for (std::size_t s = 0; s < entries.size();) {
        std::size_t e = s + 1;
        while (e < entries.size() && entries[e].actsec - entries[e - 1].actsec <= epsilon) ++e;
        if (e - s >= 2) {
            ++result.stats.collision_classes;
            const auto head = en.structure(entries[s].id);
            for (std::size_t j = s + 1; j < e; ++j) {
                if (en.structure(entries[j].id) != head) {
                    ++result.stats.nontrivial_classes;
                    candidates.emplace_back(entries[s].id, entries[j].id);
                    break;
                }
            }
        }
        s = e;
    }

    const json bounds_json{{"porosity", bounds.porosity}, {"control", bounds.control}, {"limitation", bounds.limitation}};
    const json extra{{"bounds", bounds_json}, {"seed", seed}};

    if (candidates.empty()) {
        // Fall back to the split every scope with mixed porosity admits.
        if (bounds.porosity >= 1) {
            for (const Entry& entry : entries) {
                const Count va = en.context(entry.id).va;
                if (va >= 1 && va <= 2 * bounds.porosity - 1) {
                    if (max_findings > 0) {
                        result.findings.push_back(collision_finding(en.scope(entry.id, 1), en.scope(entry.id, 0),
                                                                    epsilon, "visibility-access split", extra));
                    }
                    break;
                }
            }
        }
        return result;
    }

    std::vector<std::size_t> order(candidates.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    if (order.size() > max_findings) {
        std::mt19937_64 rng(seed);
        for (std::size_t i = order.size() - 1; i > 0; --i) std::swap(order[i], order[rng() % (i + 1)]);
        order.resize(max_findings);
        std::sort(order.begin(), order.end());
    }
    for (std::size_t i : order) {
        const Scope a = en.scope(candidates[i].first);
        const Scope b = en.scope(candidates[i].second);
        result.findings.push_back(collision_finding(a, b, epsilon, relation_of(a, b), extra));
    }
    return result;
}

bool is_within_meta_class_permutation(const Scope& a, const Scope& b)
{
    return a.porosity == b.porosity && a.limitations == b.limitations &&
           class_counts(a, MetaClass::a) == class_counts(b, MetaClass::a) &&
           class_counts(a, MetaClass::b) == class_counts(b, MetaClass::b);
}

std::vector<Scope> permutation_family(const Scope& scope)
{
    Multiset a = class_counts(scope, MetaClass::a);
    Multiset b = class_counts(scope, MetaClass::b);
    std::vector<Scope> out;
    do {
        Multiset bb = b;
        do {
            Scope s = scope;
            s.id = scope.id + "-perm-" + std::to_string(out.size());
            std::size_t ia = 0;
            std::size_t ib = 0;
            for (ControlClass c : kAllControlClasses) {
                s.controls[c] = meta_class(c) == MetaClass::a ? a[ia++] : bb[ib++];
            }
            out.push_back(std::move(s));
        } while (std::next_permutation(bb.begin(), bb.end()));
    } while (std::next_permutation(a.begin(), a.end()));
    return out;
}

std::vector<CritiqueFinding> find_collisions(std::span<const Scope> family, double epsilon)
{
    if (!(epsilon >= 0.0)) throw InputError("collision epsilon must be non-negative");
    std::vector<std::pair<double, std::size_t>> scored;
    scored.reserve(family.size());
    for (std::size_t i = 0; i < family.size(); ++i) scored.emplace_back(actual_security(family[i]).actsec, i);
    std::sort(scored.begin(), scored.end());

    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t s = 0; s < scored.size();) {
        std::size_t e = s + 1;
        while (e < scored.size() && scored[e].first - scored[e - 1].first <= epsilon) ++e;
        for (std::size_t i = s; i < e; ++i) {
            for (std::size_t j = i + 1; j < e; ++j) {
                const auto [x, y] = std::minmax(scored[i].second, scored[j].second);
                if (!same_counts(family[x], family[y])) pairs.emplace_back(x, y);
            }
        }
        s = e;
    }
    std::sort(pairs.begin(), pairs.end());
    std::vector<CritiqueFinding> out;
    out.reserve(pairs.size());
    for (const auto& [x, y] : pairs) {
        out.push_back(collision_finding(family[x], family[y], epsilon, relation_of(family[x], family[y]), json::object()));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Formula variants and balance

double prose_actual_security(double opsec_base, double fc_base, const Rational& seclim_sum, int log_power)
{
    if (log_power != 1 && log_power != 2) throw InputError("log power must be 1 or 2");
    if (seclim_sum < 0) throw DomainError("seclim_sum must be non-negative");
    const double l1 = std::log1p(to_double(100 * seclim_sum));
    const double L = log_power == 1 ? l1 : l1 * l1;
    const double A = opsec_base;
    const double F = fc_base;
    return 100 + F - A - L - A / 100 * (F - L) + F * L / 100;
}

CritiqueFinding formula_discrepancy_demo()
{
    const Scope toy = toy_scope();
    Scope empty;
    empty.id = "empty";
    const RavBreakdown t = actual_security(toy);
    const RavBreakdown e = actual_security(empty);

    const double toy_log = prose_actual_security(t.opsec_base, t.fc_base, t.seclim_sum, 1);
    const double toy_log2 = prose_actual_security(t.opsec_base, t.fc_base, t.seclim_sum, 2);
    const double empty_log = prose_actual_security(e.opsec_base, e.fc_base, e.seclim_sum, 1);
    const double empty_log2 = prose_actual_security(e.opsec_base, e.fc_base, e.seclim_sum, 2);

    CritiqueFinding f;
    f.kind = "formula";
    f.inputs = json{{"toy", ingest::scope_to_json(toy)}, {"empty", ingest::scope_to_json(empty)}};
    f.scores = json{
        {"toy_expanded", t.actsec},
        {"toy_prose_log", toy_log},
        {"toy_prose_log_squared", toy_log2},
        {"toy_gap_log_squared", toy_log2 - t.actsec},
        {"empty_expanded", e.actsec},
        {"empty_prose_log", empty_log},
        {"empty_prose_log_squared", empty_log2},
    };
    const bool agree = std::fabs(toy_log - t.actsec) <= 1e-9 && std::fabs(toy_log2 - t.actsec) <= 1e-9;
    f.verdict = agree ? Verdict::holds : Verdict::violated;
    f.narrative = "OSSTMM 3 (chapter 4) gives Actual Security as a closed formula over the three base values. "
                  "Written out in prose it flips the sign of the cross term between the control base and the "
                  "limitation log, and it uses a single log of the limitation sum where the expanded form squares "
                  "it. On the toy scope only the expanded structure lands near -12; both prose readings land "
                  "elsewhere. On the empty scope every term vanishes and all variants give 100.";
    return f;
}

CritiqueFinding balance_demo(Count opsec_sum)
{
    Scope s;
    s.id = "fully-controlled";
    s.porosity = {opsec_sum, 0, 0};
    for (ControlClass c : kAllControlClasses) s.controls[c] = opsec_sum;
    const RavBreakdown b = actual_security(s);

    CritiqueFinding f;
    f.kind = "balance";
    f.inputs = json{{"scope", ingest::scope_to_json(s)}};
    f.scores = json{
        {"actsec", b.actsec},
        {"opsec_base", b.opsec_base},
        {"expected_closed_form", 100 - b.opsec_base * b.opsec_base / 100},
        {"distance_from_100", b.actsec - 100},
    };
    f.verdict = b.actsec == 100.0 ? Verdict::holds : Verdict::violated;
    f.narrative = "OSSTMM 3 (chapter 4) calls 100 rav perfect balance between porosity and controls. A scope "
                  "where every control class exactly covers the porosity and nothing is flawed does not score "
                  "100 under the expanded formula: it scores 100 minus the square of the porosity base over "
                  "100.";
    return f;
}

// ---------------------------------------------------------------------------
// Trust aggregation

namespace {

json ratios_json(const trust::ApplicantRecord& r)
{
    json out = json::object();
    for (const auto& res : trust::consistency_ratios(r)) {
        out[res.rule_id] = res.value ? json(to_string(*res.value)) : json(nullptr);
    }
    return out;
}

json record_json(const trust::ApplicantRecord& r)
{
    using trust::ReferencePolarity;
    return json{
        {"id", r.id},
        {"months_unemployed", r.months_unemployed},
        {"months_eligible", r.months_eligible},
        {"criminal_offenses_known", r.criminal_offenses_known},
        {"age_years", r.age_years},
        {"legal_adult_age", r.legal_adult_age},
        {"references_not_positive",
         r.references_with(ReferencePolarity::neutral) + r.references_with(ReferencePolarity::negative)},
        {"past_employer_count", r.past_employer_count},
        {"employees_in_community", r.employees_in_community},
        {"community_population", r.community_population},
    };
}

int compare(const Rational& a, const Rational& b) { return a < b ? -1 : (b < a ? 1 : 0); }

}  // namespace

CritiqueFinding trust_aggregation_demo(const trust::ApplicantRecord& record)
{
    trust::validate(record);
    std::size_t defined = 0;
    for (const auto& r : trust::consistency_ratios(record)) defined += r.defined() ? 1 : 0;
    if (defined < 2) throw DomainError("trust aggregation demo needs at least two defined consistency ratios");

    const Rational avg = *trust::consistency_score(record, trust::CombineMode::average).value;
    const Rational mx = *trust::consistency_score(record, trust::CombineMode::max).value;

    std::optional<trust::ApplicantRecord> partner;
    Rational partner_avg;
    Rational partner_max;
    for (Count past = 1; past <= 4 && !partner; ++past) {
        for (Count not_positive = 0; not_positive <= past && !partner; ++not_positive) {
            for (Count eligible = 1; eligible <= 12 && !partner; ++eligible) {
                for (Count unemployed = 0; unemployed <= eligible && !partner; ++unemployed) {
                    for (Count adult = 1; adult <= 12 && !partner; ++adult) {
                        for (Count offenses = 0; offenses <= 3 && !partner; ++offenses) {
                            trust::ApplicantRecord p;
                            p.id = "partner";
                            p.months_eligible = eligible;
                            p.months_unemployed = unemployed;
                            p.age_years = p.legal_adult_age + adult;
                            p.criminal_offenses_known = offenses;
                            p.past_employer_count = past;
                            for (Count k = 0; k < past; ++k) {
                                p.references.push_back({"employer-" + std::to_string(k + 1),
                                                        k < not_positive ? trust::ReferencePolarity::negative
                                                                         : trust::ReferencePolarity::positive});
                            }
                            const Rational pa = *trust::consistency_score(p, trust::CombineMode::average).value;
                            const Rational pm = *trust::consistency_score(p, trust::CombineMode::max).value;
                            if (compare(pa, avg) * compare(pm, mx) < 0) {
                                partner = p;
                                partner_avg = pa;
                                partner_max = pm;
                            }
                        }
                    }
                }
            }
        }
    }

    CritiqueFinding f;
    f.kind = "trust-aggregation";
    f.inputs = json{{"record", record_json(record)}};
    f.scores = json{
        {"record_ratios", ratios_json(record)},
        {"record_average", to_string(avg)},
        {"record_max", to_string(mx)},
    };
    if (partner) {
        f.inputs["partner"] = record_json(*partner);
        f.scores["partner_ratios"] = ratios_json(*partner);
        f.scores["partner_average"] = to_string(partner_avg);
        f.scores["partner_max"] = to_string(partner_max);
        f.scores["riskier_by_average"] = compare(avg, partner_avg) > 0 ? record.id : partner->id;
        f.scores["riskier_by_max"] = compare(mx, partner_max) > 0 ? record.id : partner->id;
        f.verdict = Verdict::violated;
        f.narrative = "OSSTMM 3 (chapter 5, trust rules) averages the consistency ratios of an applicant. "
                      "Taking the worst ratio instead is an equally plausible reading, and the two readings "
                      "rank this pair of applicants in opposite order.";
    } else {
        f.verdict = Verdict::holds;
        f.narrative = "OSSTMM 3 (chapter 5, trust rules) averages the consistency ratios of an applicant. "
                      "No small partner record was found whose ranking against this one flips between the "
                      "average and the maximum.";
    }
    return f;
}

CritiqueFinding liability_equivalence_demo(double tolerance)
{
    if (!(tolerance >= 0.0)) throw InputError("tolerance must be non-negative");
    trust::ApplicantRecord conviction;
    conviction.id = "conviction";
    conviction.age_years = 50;
    conviction.criminal_offenses_known = 1;
    trust::ApplicantRecord community;
    community.id = "community";
    community.employees_in_community = 156;
    community.community_population = 5000;

    const Rational offenses = *trust::consistency_ratios(conviction)[1].value;
    const Rational porosity = *trust::porosity_rule(community).value;
    const Rational diff = abs(offenses - porosity);
    const bool equal = tolerance == 0.0 ? diff == 0 : to_double(diff) <= tolerance;

    CritiqueFinding f;
    f.kind = "liability-equivalence";
    f.inputs = json{
        {"conviction", record_json(conviction)},
        {"community", record_json(community)},
        {"tolerance", scientific(tolerance)},
    };
    f.scores = json{
        {"offenses_per_adult_year", to_string(offenses)},
        {"community_porosity", to_string(porosity)},
        {"difference", to_string(diff)},
    };
    f.verdict = equal ? Verdict::holds : Verdict::violated;
    f.narrative = "Under the OSSTMM 3 trust rules (chapter 5), one offense over 32 adult years and 156 colleagues "
                  "in a town of 5000 both come out near 1/32. The two values differ by 1/20000, so they count as "
                  "the same liability only once a tolerance is allowed.";
    return f;
}

}  // namespace ravkit::critique
