#include "ultraharmonic/syndetic.hpp"

#include "ultraharmonic/error.hpp"

#include <algorithm>
#include <numeric>

namespace ultraharmonic {
namespace {

using K = SetExpr::Kind;

constexpr Nat kWitnessHorizon = 1 << 20;

struct Result {
    Truth value = Truth::Unknown;
    std::optional<Derivation> derivation;
    std::optional<Nat> bound;
    bool needs_certificate = false;
};

Result leaf(Truth t, const char* rule, const SetExpr& s, std::optional<Nat> bound = std::nullopt)
{
    return {t, Derivation{rule, print(s), {}}, bound, false};
}

Result lift(Truth t, const char* rule, const SetExpr& s, std::vector<Result> from)
{
    Result out{t, Derivation{rule, print(s), {}}, std::nullopt, false};
    for (auto& r : from) {
        if (!out.bound) out.bound = r.bound;
        out.needs_certificate = out.needs_certificate || r.needs_certificate;
        out.derivation->premises.push_back(std::move(*r.derivation));
    }
    return out;
}

Result rules(const SetExpr& s)
{
    switch (s.kind()) {
    case K::AP: return leaf(Truth::Yes, "AP syndetic", s, s.diff());
    case K::Finite:
    case K::FromFile: return leaf(Truth::No, "finite sets have no long windows", s);
    case K::Powers: return leaf(Truth::No, "powers: gaps grow without bound", s);
    case K::KthPowers: return leaf(Truth::No, "kth powers: gaps grow without bound", s);
    case K::Primes: {
        auto r = leaf(Truth::No, "primes: factorial gap certificates", s);
        r.needs_certificate = true;
        return r;
    }
    case K::Shifted:
    case K::LeftShift: {
        auto r = rules(s.children()[0]);
        if (r.value == Truth::Unknown) return {};
        Truth t = r.value;
        return lift(t, s.kind() == K::Shifted ? "shift preserves the verdict" : "left shift preserves the verdict", s,
                    {std::move(r)});
    }
    case K::Union: {
        std::vector<Result> nos;
        bool all_no = true;
        for (const auto& c : s.children()) {
            auto r = rules(c);
            if (r.value == Truth::Yes) return lift(Truth::Yes, "union with a piecewise syndetic operand", s, {std::move(r)});
            if (r.value == Truth::No) nos.push_back(std::move(r));
            else all_no = false;
        }
        if (all_no) return lift(Truth::No, "union of sets that are not piecewise syndetic", s, std::move(nos));
        return {};
    }
    case K::Intersection: {
        std::vector<Result> parts;
        for (const auto& c : s.children()) {
            parts.push_back(rules(c));
            if (parts.back().value == Truth::No)
                return lift(Truth::No, "subset of a set that is not piecewise syndetic", s, {std::move(parts.back())});
        }
        for (std::size_t i = 0; i < parts.size(); ++i) {
            if (parts[i].value != Truth::Yes) continue;
            std::vector<Derivation> inclusions;
            for (std::size_t j = 0; j < parts.size(); ++j) {
                if (j == i) continue;
                auto inc = prove_contains(s.children()[j], s.children()[i]);
                if (!inc) break;
                inclusions.push_back(std::move(*inc));
            }
            if (inclusions.size() + 1 == parts.size()) {
                auto out = lift(Truth::Yes, "intersection equals an operand", s, {std::move(parts[i])});
                for (auto& inc : inclusions) out.derivation->premises.push_back(std::move(inc));
                return out;
            }
        }
        return {};
    }
    case K::Difference: {
        auto a = rules(s.children()[0]);
        if (a.value == Truth::No)
            return lift(Truth::No, "subset of a set that is not piecewise syndetic", s, {std::move(a)});
        // a window of length L loses at most |b| elements, leaving a piece of
        // length >= (L - |b|) / (|b| + 1)
        const SetExpr& b = s.children()[1];
        if (a.value == Truth::Yes && (b.kind() == K::Finite || b.kind() == K::FromFile)) {
            auto out = lift(Truth::Yes, "removing finitely many elements preserves the verdict", s, {std::move(a)});
            out.derivation->premises.push_back(
                Derivation{"finite sets have no long windows", print(b), {}});
            return out;
        }
        return {};
    }
    case K::Sumset: {
        for (int side = 0; side < 2; ++side) {
            auto r = rules(s.children()[side]);
            if (r.value != Truth::Yes) continue;
            const SetExpr& other = s.children()[1 - side];
            auto u = take(other, 1, kWitnessHorizon);
            if (u.empty()) continue;
            auto out = lift(Truth::Yes, "sumset contains a translate of a piecewise syndetic operand", s, {std::move(r)});
            out.derivation->premises.push_back(
                Derivation{"element of operand", std::to_string(u.front()) + " ∈ " + print(other), {}});
            return out;
        }
        return {};
    }
    }
    return {};
}

}  // namespace

std::size_t GapProfile::longest_run(Nat bound) const
{
    auto it = profile.upper_bound(bound);
    if (it == profile.begin()) return elements == 0 ? 0 : 1;
    return std::prev(it)->second;
}

GapProfile gap_profile(const SetExpr& e, Nat horizon)
{
    auto values = enumerate(e, horizon);
    if (values.size() < 2)
        throw InsufficientDataError("gap profile needs at least 2 elements <= " + std::to_string(horizon),
                                    values.size());
    GapProfile g;
    g.horizon = horizon;
    g.elements = values.size();
    g.gaps.reserve(values.size() - 1);
    for (std::size_t i = 1; i < values.size(); ++i) g.gaps.push_back(values[i] - values[i - 1]);
    g.max_gap = *std::max_element(g.gaps.begin(), g.gaps.end());

    // Activate gaps in increasing size; runs of active gaps merge like
    // intervals, tracked by their endpoints.
    std::vector<std::size_t> order(g.gaps.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return g.gaps[a] < g.gaps[b]; });
    std::vector<std::size_t> run_left(g.gaps.size()), run_right(g.gaps.size());
    std::vector<bool> active(g.gaps.size(), false);
    std::size_t best = 0;
    for (std::size_t k = 0; k < order.size();) {
        Nat bound = g.gaps[order[k]];
        for (; k < order.size() && g.gaps[order[k]] == bound; ++k) {
            std::size_t i = order[k];
            active[i] = true;
            std::size_t left = i;
            std::size_t right = i;
            if (i > 0 && active[i - 1]) left = run_left[i - 1];
            if (i + 1 < active.size() && active[i + 1]) right = run_right[i + 1];
            run_right[left] = right;
            run_left[right] = left;
            best = std::max(best, right - left + 1);
        }
        g.profile[bound] = best + 1;
    }
    return g;
}

SyndeticVerdict classify_psyndetic(const SetExpr& e, const SyndeticOptions& options)
{
    SetExpr s = simplify(e);
    Result r = rules(s);
    SyndeticVerdict v;
    v.value = r.value;
    if (r.value != Truth::Unknown) {
        v.bound = r.bound;
        if (s == e) v.derivation = std::move(r.derivation);
        else v.derivation = Derivation{"simplification", print(e), {std::move(*r.derivation)}};
        if (r.needs_certificate) v.certificate = prime_gap_certificate(options.certificate_bound);
        return v;
    }
    if (options.diagnostics) {
        try {
            v.profile = gap_profile(s, options.profile_horizon);
        } catch (const InsufficientDataError&) {
        }
    }
    return v;
}

GapCertificate prime_gap_certificate(Nat b)
{
    if (b == 0) throw DomainError("gap bound must be positive");
    if (b > kMaxCertificateBound)
        throw ConfigError("gap certificates are capped at b = " + std::to_string(kMaxCertificateBound));
    mpz_class factorial;
    mpz_fac_ui(factorial.get_mpz_t(), b + 1);
    GapCertificate c;
    c.bound = b;
    c.length = b;
    c.start = factorial + 2;
    for (Nat i = 2; i <= b + 1; ++i) c.divisors.push_back(i);
    return c;
}

bool validate_certificate(const GapCertificate& c)
{
    if (c.divisors.size() != c.length || c.length != c.bound) return false;
    for (Nat i = 0; i < c.length; ++i) {
        mpz_class value = c.start + i;
        Nat d = c.divisors[i];
        if (d < 2 || value <= d) return false;
        if (!mpz_divisible_ui_p(value.get_mpz_t(), d)) return false;
    }
    return true;
}

}  // namespace ultraharmonic
