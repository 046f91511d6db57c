#include "ultraharmonic/setexpr.hpp"

#include "node.hpp"
#include "ultraharmonic/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>

namespace ultraharmonic {

using detail::Node;

namespace {

SetExpr::Kind node_kind(const std::shared_ptr<const Node>& n) { return n->kind; }

void require_positive(Nat v, const char* what)
{
    if (v == 0) throw DomainError(std::string(what) + " must be a positive integer");
}

std::vector<Nat> read_set_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read set file '" + path + "'");
    std::vector<Nat> out;
    std::string line;
    std::size_t lineno = 0;
    bool saw_blank = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) {
            saw_blank = true;
            continue;
        }
        if (saw_blank) throw InputError(path + ":" + std::to_string(lineno - 1) + ": blank line");
        Nat v = 0;
        auto [ptr, ec] = std::from_chars(line.data(), line.data() + line.size(), v);
        if (ec != std::errc() || ptr != line.data() + line.size() || v == 0)
            throw InputError(path + ":" + std::to_string(lineno) + ": expected a positive decimal integer");
        if (!out.empty() && v <= out.back())
            throw InputError(path + ":" + std::to_string(lineno) + ": values must be strictly increasing");
        out.push_back(v);
    }
    return out;
}

}  // namespace

namespace detail {

Nat iroot(Nat n, Nat k)
{
    if (k == 1 || n < 2) return n;
    auto r = static_cast<Nat>(std::pow(static_cast<long double>(n), 1.0L / static_cast<long double>(k)));
    auto fits = [&](Nat x) {
        auto p = checked_pow(x, k);
        return p && *p <= n;
    };
    while (r > 0 && !fits(r)) --r;
    while (fits(r + 1)) ++r;
    return r;
}

std::optional<Nat> checked_pow(Nat base, Nat exp)
{
    Nat result = 1;
    for (Nat i = 0; i < exp; ++i) {
        if (base != 0 && result > ~Nat{0} / base) return std::nullopt;
        result *= base;
    }
    return result;
}

}  // namespace detail

SetExpr SetExpr::finite(std::vector<Nat> values)
{
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    if (!values.empty() && values.front() == 0) throw DomainError("0 is not a natural number here");
    return SetExpr(std::make_shared<const Node>(Node{Kind::Finite, 0, 0, std::move(values), {}, {}}));
}

SetExpr SetExpr::ap(Nat first, Nat diff)
{
    require_positive(first, "ap first term");
    require_positive(diff, "ap difference");
    return SetExpr(std::make_shared<const Node>(Node{Kind::AP, first, diff, {}, {}, {}}));
}

SetExpr SetExpr::powers(Nat base)
{
    if (base < 2) throw DomainError("pow base must be >= 2");
    return SetExpr(std::make_shared<const Node>(Node{Kind::Powers, base, 0, {}, {}, {}}));
}

SetExpr SetExpr::kth_powers(Nat k)
{
    if (k < 2) throw DomainError("kth exponent must be >= 2");
    return SetExpr(std::make_shared<const Node>(Node{Kind::KthPowers, k, 0, {}, {}, {}}));
}

SetExpr SetExpr::primes()
{
    static const SetExpr p(std::make_shared<const Node>(Node{Kind::Primes, 0, 0, {}, {}, {}}));
    return p;
}

SetExpr SetExpr::shifted(SetExpr inner, Nat s)
{
    require_positive(s, "shift");
    return SetExpr(std::make_shared<const Node>(Node{Kind::Shifted, s, 0, {}, {std::move(inner)}, {}}));
}

SetExpr SetExpr::left_shifted(SetExpr inner, Nat x)
{
    require_positive(x, "left shift");
    return SetExpr(std::make_shared<const Node>(Node{Kind::LeftShift, x, 0, {}, {std::move(inner)}, {}}));
}

SetExpr SetExpr::union_of(std::vector<SetExpr> parts)
{
    return SetExpr(std::make_shared<const Node>(Node{Kind::Union, 0, 0, {}, std::move(parts), {}}));
}

SetExpr SetExpr::intersection_of(std::vector<SetExpr> parts)
{
    if (parts.empty()) throw DomainError("intersection needs at least one operand");
    return SetExpr(std::make_shared<const Node>(Node{Kind::Intersection, 0, 0, {}, std::move(parts), {}}));
}

SetExpr SetExpr::difference(SetExpr a, SetExpr b)
{
    return SetExpr(std::make_shared<const Node>(
        Node{Kind::Difference, 0, 0, {}, {std::move(a), std::move(b)}, {}}));
}

SetExpr SetExpr::sumset(SetExpr a, SetExpr b)
{
    return SetExpr(std::make_shared<const Node>(Node{Kind::Sumset, 0, 0, {}, {std::move(a), std::move(b)}, {}}));
}

SetExpr SetExpr::from_file(const std::string& path)
{
    return SetExpr(std::make_shared<const Node>(Node{Kind::FromFile, 0, 0, read_set_file(path), {}, path}));
}

SetExpr::Kind SetExpr::kind() const { return node_kind(node_); }
const std::vector<Nat>& SetExpr::values() const { return node_->values; }
Nat SetExpr::first() const { return node_->a; }
Nat SetExpr::diff() const { return node_->b; }
Nat SetExpr::base() const { return node_->a; }
Nat SetExpr::k() const { return node_->a; }
Nat SetExpr::offset() const { return node_->a; }
const std::string& SetExpr::path() const { return node_->path; }
const std::vector<SetExpr>& SetExpr::children() const { return node_->children; }

bool operator==(const SetExpr& a, const SetExpr& b)
{
    if (a.node_ == b.node_) return true;
    const Node& x = *a.node_;
    const Node& y = *b.node_;
    return x.kind == y.kind && x.a == y.a && x.b == y.b && x.values == y.values && x.path == y.path &&
           x.children == y.children;
}

const char* kind_name(SetExpr::Kind kind)
{
    using K = SetExpr::Kind;
    switch (kind) {
    case K::Finite: return "Finite";
    case K::AP: return "AP";
    case K::Powers: return "Powers";
    case K::KthPowers: return "KthPowers";
    case K::Primes: return "Primes";
    case K::Shifted: return "Shifted";
    case K::LeftShift: return "LeftShift";
    case K::Union: return "Union";
    case K::Intersection: return "Intersection";
    case K::Difference: return "Difference";
    case K::Sumset: return "Sumset";
    case K::FromFile: return "FromFile";
    }
    return "?";
}

const char* truth_name(Truth t)
{
    switch (t) {
    case Truth::Yes: return "Yes";
    case Truth::No: return "No";
    case Truth::Unknown: return "Unknown";
    }
    return "?";
}

bool member(const SetExpr& e, Nat n)
{
    using K = SetExpr::Kind;
    if (n == 0) return false;
    switch (e.kind()) {
    case K::Finite:
    case K::FromFile: return std::binary_search(e.values().begin(), e.values().end(), n);
    case K::AP: return n >= e.first() && (n - e.first()) % e.diff() == 0;
    case K::Powers: {
        if (n < e.base()) return false;
        while (n % e.base() == 0) n /= e.base();
        return n == 1;
    }
    case K::KthPowers: {
        Nat r = detail::iroot(n, e.k());
        return detail::checked_pow(r, e.k()) == n;
    }
    case K::Primes: {
        if (auto table = primes::installed_table(); table && n <= table->limit()) return table->is_prime(n);
        return primes::is_prime(n);
    }
    case K::Shifted: return n > e.offset() && member(e.children()[0], n - e.offset());
    case K::LeftShift:
        return n <= ~Nat{0} - e.offset() && member(e.children()[0], n + e.offset());
    case K::Union:
        return std::any_of(e.children().begin(), e.children().end(),
                           [n](const SetExpr& c) { return member(c, n); });
    case K::Intersection:
        return std::all_of(e.children().begin(), e.children().end(),
                           [n](const SetExpr& c) { return member(c, n); });
    case K::Difference: return member(e.children()[0], n) && !member(e.children()[1], n);
    case K::Sumset: {
        if (n < 2) return false;
        const SetExpr& a = e.children()[0];
        const SetExpr& b = e.children()[1];
        bool drive_a = estimated_count(a, n - 1) <= estimated_count(b, n - 1);
        const SetExpr& driver = drive_a ? a : b;
        const SetExpr& other = drive_a ? b : a;
        Enumerator it(driver, n - 1);
        while (auto u = it.next()) {
            if (member(other, n - *u)) return true;
        }
        return false;
    }
    }
    return false;
}

double estimated_count(const SetExpr& e, Nat horizon)
{
    using K = SetExpr::Kind;
    auto h = static_cast<double>(horizon);
    switch (e.kind()) {
    case K::Finite:
    case K::FromFile:
        return static_cast<double>(
            std::upper_bound(e.values().begin(), e.values().end(), horizon) - e.values().begin());
    case K::AP: return horizon < e.first() ? 0.0 : static_cast<double>((horizon - e.first()) / e.diff() + 1);
    case K::Powers: return horizon < 2 ? 0.0 : std::log(h) / std::log(static_cast<double>(e.base()));
    case K::KthPowers: return std::pow(h, 1.0 / static_cast<double>(e.k()));
    case K::Primes: return horizon < 3 ? 1.0 : h / std::log(h);
    case K::Shifted:
        return horizon <= e.offset() ? 0.0 : estimated_count(e.children()[0], horizon - e.offset());
    case K::LeftShift: return estimated_count(e.children()[0], detail::saturating_add(horizon, e.offset()));
    case K::Union: {
        double total = 0;
        for (const auto& c : e.children()) total += estimated_count(c, horizon);
        return std::min(total, h);
    }
    case K::Intersection: {
        double best = h;
        for (const auto& c : e.children()) best = std::min(best, estimated_count(c, horizon));
        return best;
    }
    case K::Difference: return estimated_count(e.children()[0], horizon);
    case K::Sumset:
        return std::min(h, estimated_count(e.children()[0], horizon) * estimated_count(e.children()[1], horizon));
    }
    return h;
}

SetExpr shift(const SetExpr& e, Nat s) { return SetExpr::shifted(e, s); }

SetExpr left_shift(const SetExpr& e, Nat x) { return SetExpr::left_shifted(e, x); }

}  // namespace ultraharmonic
