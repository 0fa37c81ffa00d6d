#include "cyv/k3fib.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include "cyv/varieties.hpp"

namespace cyv {

namespace {

using Line3 = std::array<Rational, 3>;

std::vector<Line3> quad_lines_at(long s, long t) {
    return {
        Line3{Rational(t), Rational(t), Rational(t - s)},
        Line3{Rational(t), Rational(-t), Rational(-t - s)},
        Line3{Rational(t), Rational(-t), Rational(t + s)},
        Line3{Rational(t), Rational(t), Rational(-t + s)},
    };
}

bool dependent(const Line3& a, const Line3& b) {
    return a[0] * b[1] - a[1] * b[0] == 0 && a[0] * b[2] - a[2] * b[0] == 0 &&
           a[1] * b[2] - a[2] * b[1] == 0;
}

std::array<Rational, 3> cross(const Line3& a, const Line3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

std::array<Rational, 3> normalize3(std::array<Rational, 3> v) {
    for (const Rational& c : v)
        if (c != 0) {
            Rational inv = 1 / c;
            for (Rational& x : v) x *= inv;
            return v;
        }
    throw std::logic_error("normalize3: zero");
}

bool on_line(const std::array<Rational, 3>& pt, const Line3& l) {
    return l[0] * pt[0] + l[1] * pt[1] + l[2] * pt[2] == 0;
}

// rational roots (s : t) of a binary form with integer-cleared coefficients
std::vector<std::pair<long, long>> binary_form_rational_roots(const MultiPoly& f) {
    // f in ring (s, t), homogeneous; roots from the dehomogenization plus the
    // point at infinity when the top s-coefficient vanishes
    std::vector<std::pair<long, long>> roots;
    int deg = f.total_degree();
    std::vector<Rational> coeff(static_cast<std::size_t>(deg) + 1, Rational(0));
    for (const auto& [m, c] : f.terms()) coeff[m.e[0]] = c;
    // clear denominators to integers
    BigInt lcm_den(1);
    for (const Rational& c : coeff) lcm_den = lcm(lcm_den, BigInt(c.get_den()));
    std::vector<BigInt> ic;
    for (const Rational& c : coeff) ic.push_back(BigInt(c.get_num()) * (lcm_den / c.get_den()));
    // strip s^k: root (0:1)
    std::size_t lo = 0;
    while (lo < ic.size() && ic[lo] == 0) ++lo;
    if (lo > 0) roots.push_back({0, 1});
    std::size_t hi = ic.size() - 1;
    while (hi > lo && ic[hi] == 0) --hi;
    if (hi < static_cast<std::size_t>(deg)) roots.push_back({1, 0});
    // rational roots a/b of the middle part: a | ic[lo], b | ic[hi]
    if (hi > lo) {
        BigInt c0 = ic[lo], cl = ic[hi];
        auto divisors = [](BigInt n) {
            std::vector<long> ds;
            n = abs(n);
            long nn = static_cast<long>(n.get_si());
            for (long d = 1; d * d <= nn; ++d)
                if (nn % d == 0) {
                    ds.push_back(d);
                    ds.push_back(nn / d);
                }
            return ds;
        };
        for (long a : divisors(c0))
            for (long b : divisors(cl))
                for (long sign : {1, -1}) {
                    if (std::gcd(a, b) != 1) continue;
                    // evaluate at (s, t) = (sign*a, b)
                    BigInt val(0);
                    for (std::size_t i = lo; i <= hi; ++i) {
                        BigInt term = ic[i];
                        for (std::size_t k = 0; k < i; ++k) term *= sign * a;
                        for (std::size_t k = i; k < static_cast<std::size_t>(deg); ++k) term *= b;
                        val += term;
                    }
                    if (val == 0) roots.push_back({sign * a, b});
                }
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

}  // namespace

FiberSlice fiber(long s, long t) {
    if (s == 0 && t == 0) throw std::invalid_argument("fiber: (0, 0)");
    FiberSlice fs;
    fs.s = s;
    fs.t = t;
    fs.model = k3_fiber_equations(s, t);
    fs.pair_lines = {Line3{1, 0, 0}, Line3{0, 1, 0}};
    fs.quad_lines = quad_lines_at(s, t);

    std::vector<Line3> all = fs.pair_lines;
    all.insert(all.end(), fs.quad_lines.begin(), fs.quad_lines.end());
    fs.degenerate = false;
    for (std::size_t i = 0; i < all.size(); ++i)
        for (std::size_t j = i + 1; j < all.size(); ++j)
            if (dependent(all[i], all[j])) fs.degenerate = true;
    if (fs.degenerate) {
        fs.own_double_points = -1;
        fs.mutual_points = -1;
        return fs;
    }
    // own double points: crossings within each branch curve
    std::set<std::array<Rational, 3>> own, mutual;
    own.insert(normalize3(cross(fs.pair_lines[0], fs.pair_lines[1])));
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = i + 1; j < 4; ++j)
            own.insert(normalize3(cross(fs.quad_lines[i], fs.quad_lines[j])));
    for (const Line3& a : fs.pair_lines)
        for (const Line3& b : fs.quad_lines) mutual.insert(normalize3(cross(a, b)));
    // stray incidences: an own point on the other branch curve, or points
    // merging, degenerate the configuration
    for (const auto& pt : own) {
        bool on_pair = on_line(pt, fs.pair_lines[0]) && on_line(pt, fs.pair_lines[1]);
        int quad_hits = 0;
        for (const Line3& l : fs.quad_lines)
            if (on_line(pt, l)) ++quad_hits;
        if (on_pair && quad_hits > 0) fs.degenerate = true;
        if (quad_hits > 2) fs.degenerate = true;
        if ((on_line(pt, fs.pair_lines[0]) || on_line(pt, fs.pair_lines[1])) && quad_hits >= 2)
            fs.degenerate = true;
        if (mutual.count(pt)) fs.degenerate = true;
    }
    fs.own_double_points = static_cast<int>(own.size());
    fs.mutual_points = static_cast<int>(mutual.size());
    if (fs.own_double_points != 7 || fs.mutual_points != 8) fs.degenerate = true;
    return fs;
}

std::vector<std::pair<long, long>> special_fibers() {
    PolyRing R = PolyRing::make({"s", "t"});
    MultiPoly sv = MultiPoly::variable(R, 0), tv = MultiPoly::variable(R, 1);
    // symbolic line coefficients
    using PLine = std::array<MultiPoly, 3>;
    std::vector<PLine> lines;
    lines.push_back({MultiPoly::constant(R, 1), MultiPoly::zero(R), MultiPoly::zero(R)});
    lines.push_back({MultiPoly::zero(R), MultiPoly::constant(R, 1), MultiPoly::zero(R)});
    lines.push_back({tv, tv, tv - sv});
    lines.push_back({tv, -tv, -tv - sv});
    lines.push_back({tv, -tv, tv + sv});
    lines.push_back({tv, tv, sv - tv});

    std::set<std::pair<long, long>> params;
    auto note_roots = [&](const MultiPoly& f) {
        if (f.is_zero()) return;
        if (f.total_degree() == 0) return;
        for (auto r : binary_form_rational_roots(f)) params.insert(r);
    };
    // coincident pairs: common roots of the three 2x2 minors
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = i + 1; j < 6; ++j) {
            std::vector<MultiPoly> minors;
            for (int a = 0; a < 3; ++a)
                for (int b = a + 1; b < 3; ++b)
                    minors.push_back(lines[i][static_cast<std::size_t>(a)] * lines[j][static_cast<std::size_t>(b)] -
                                     lines[i][static_cast<std::size_t>(b)] * lines[j][static_cast<std::size_t>(a)]);
            // parameters killing all three minors at once
            std::vector<std::pair<long, long>> cand;
            bool first = true;
            for (const MultiPoly& m : minors) {
                if (m.is_zero()) continue;
                auto roots = binary_form_rational_roots(m);
                if (first) {
                    cand = roots;
                    first = false;
                } else {
                    std::vector<std::pair<long, long>> inter;
                    for (auto r : cand)
                        if (std::find(roots.begin(), roots.end(), r) != roots.end())
                            inter.push_back(r);
                    cand = inter;
                }
            }
            if (!first)
                for (auto r : cand) params.insert(r);
        }
    // concurrent triples: vanishing 3x3 determinant
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = i + 1; j < 6; ++j)
            for (std::size_t k = j + 1; k < 6; ++k) {
                MultiPoly det = lines[i][0] * (lines[j][1] * lines[k][2] - lines[j][2] * lines[k][1]) -
                                lines[i][1] * (lines[j][0] * lines[k][2] - lines[j][2] * lines[k][0]) +
                                lines[i][2] * (lines[j][0] * lines[k][1] - lines[j][1] * lines[k][0]);
                note_roots(det);
            }
    return {params.begin(), params.end()};
}

std::vector<CheckReport> splitting_checks(long s, long t) {
    std::vector<CheckReport> out;
    FiberSlice fs = fiber(s, t);
    std::ostringstream tag;
    tag << "(" << s << ":" << t << ")";
    if (fs.degenerate) {
        CheckReport r = CheckReport::make("k3/splitting" + tag.str(), "splitting restrictions at a pencil member", "trivial");
        r.expect("generic parameter").got("special parameter");
        r.status = CheckStatus::Skipped;
        out.push_back(r);
        return out;
    }
    Catalog cat;
    // parameterizations by (u : v); BinaryForm packs coeff[i] u^i v^(d-i)
    auto lin_u = [](long c) { BinaryForm b; b.coeff = {Rational(0), Rational(c)}; return b; };
    auto lin_v = [](long c) { BinaryForm b; b.coeff = {Rational(c), Rational(0)}; return b; };
    // line t x0 + s x1 = 0 inside the plane s x2 + t x3 = 0
    std::vector<BinaryForm> line1 = {lin_u(-s), lin_u(t), lin_v(-t), lin_v(s)};
    std::vector<BinaryForm> line2 = {lin_u(-t), lin_u(s), lin_v(-t), lin_v(s)};
    // conic t x0 x1 + s x2^2 = 0: (t u^2, -s v^2, t uv, -s uv)
    auto q20 = [](long c) { BinaryForm b; b.coeff = {Rational(0), Rational(0), Rational(c)}; return b; };
    auto q02 = [](long c) { BinaryForm b; b.coeff = {Rational(c), Rational(0), Rational(0)}; return b; };
    auto q11 = [](long c) { BinaryForm b; b.coeff = {Rational(0), Rational(c), Rational(0)}; return b; };
    std::vector<BinaryForm> conic = {q20(t), q02(-s), q11(t), q11(-s)};

    auto check_curve = [&](const std::string& which, const std::vector<BinaryForm>& param) {
        for (const auto& [name, v] : {std::pair<std::string, const WeightedVariety*>{"D1", &cat.d1()},
                                      {"D2", &cat.d2()}}) {
            RestrictionResult rr = restrict_to_curve(v->equations[0], param);
            CheckReport r = CheckReport::make("k3/split_" + which + "_" + name + tag.str(),
                                              "branch restriction has even multiplicities", "derived");
            r.expect("square");
            r.got(rr.status == RestrictionStatus::Square
                      ? "square"
                      : (rr.status == RestrictionStatus::IdenticallyZero ? "identically zero"
                                                                         : "not a square"));
            r.outcome(rr.status == RestrictionStatus::Square);
            out.push_back(r);
        }
    };
    check_curve("line1", line1);
    check_curve("line2", line2);
    check_curve("conic", conic);
    return out;
}

std::vector<CheckReport> verify_k3(unsigned n_generic_params, std::uint64_t seed) {
    std::vector<CheckReport> out;
    {
        auto sp = special_fibers();
        std::vector<std::pair<long, long>> expected = {{-1, 1}, {0, 1}, {1, 0}, {1, 1}};
        CheckReport r = CheckReport::make("k3/special_fibers", "four degenerate pencil members", "paper");
        std::ostringstream e, g;
        for (auto [a, b] : expected) e << "(" << a << ":" << b << ") ";
        for (auto [a, b] : sp) g << "(" << a << ":" << b << ") ";
        r.expect(e.str()).got(g.str());
        r.outcome(sp == expected);
        out.push_back(r);
    }
    {
        FiberSlice fs = fiber(2, 1);
        CheckReport r = CheckReport::make("k3/generic_nodes", "seven double points of the branch curves", "paper");
        r.expect("7 own + 8 mutual, non-degenerate");
        std::ostringstream g;
        g << fs.own_double_points << " own + " << fs.mutual_points << " mutual"
          << (fs.degenerate ? ", degenerate" : "");
        r.got(g.str());
        r.outcome(!fs.degenerate && fs.own_double_points == 7 && fs.mutual_points == 8);
        out.push_back(r);
    }
    {
        // degeneracy detection at the four special members
        bool ok = true;
        for (auto [a, b] : {std::pair<long, long>{1, 1}, {-1, 1}, {1, 0}, {0, 1}})
            ok = ok && fiber(a, b).degenerate;
        CheckReport r = CheckReport::make("k3/special_detected", "listed members degenerate", "paper");
        r.expect("all four degenerate").got(ok ? "all four degenerate" : "missed one");
        r.outcome(ok);
        out.push_back(r);
    }
    {
        // weighted homogeneity of the fiber equations across parameters
        bool ok = true;
        for (long a = -3; a <= 3; ++a)
            for (long b = 1; b <= 3; ++b) {
                K3FiberEquations fe = k3_fiber_equations(a, b);
                auto d0 = fe.eqs[0].homogeneous_weighted_degree();
                auto d1 = fe.eqs[1].homogeneous_weighted_degree();
                ok = ok && d0 && *d0 == 2 && d1 && *d1 == 4;
            }
        CheckReport r = CheckReport::make("k3/fiber_homogeneity", "fiber equations weighted-homogeneous", "trivial");
        r.expect("degrees 2 and 4").got(ok ? "degrees 2 and 4" : "violation");
        r.outcome(ok);
        out.push_back(r);
    }
    // splitting checks across seeded generic parameters
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> dist(-20, 20);
    std::set<std::pair<long, long>> specials = {{-1, 1}, {0, 1}, {1, 0}, {1, 1}};
    unsigned done = 0;
    while (done < n_generic_params) {
        long a = dist(rng), b = dist(rng);
        if (b == 0 && a == 0) continue;
        long g = std::gcd(std::abs(a), std::abs(b));
        if (g == 0) continue;
        a /= g;
        b /= g;
        if (b < 0 || (b == 0 && a < 0)) {
            a = -a;
            b = -b;
        }
        if (specials.count({a, b})) continue;
        auto checks = splitting_checks(a, b);
        bool all = true;
        for (const auto& c : checks) all = all && c.status == CheckStatus::Pass;
        if (!all)
            for (auto& c : checks) out.push_back(c);
        ++done;
        if (done == 1)
            for (auto& c : checks) out.push_back(c);  // keep one verbose sample
    }
    {
        CheckReport r = CheckReport::make("k3/splitting_sweep", "splitting restrictions square at sampled generic members", "derived");
        r.expect(std::to_string(n_generic_params) + " parameters, all square");
        bool any_fail = false;
        for (const auto& c : out)
            if (c.check.rfind("k3/split_", 0) == 0 && c.status == CheckStatus::Fail) any_fail = true;
        r.got(any_fail ? "failures recorded above" : "all square");
        r.outcome(!any_fail);
        out.push_back(r);
    }
    {
        // the divisor tally the fiber yields directly: 7 blown double points
        // give two classes each, plus the hyperplane class
        CheckReport r = CheckReport::make("k3/fiber_divisor_tally", "direct fiber divisor count before the extra three", "derived");
        r.expect("15 = 7*2 + 1 (source states 16)");
        r.got("15");
        r.status = CheckStatus::FlaggedDiscrepancy;
        r.note = "computed tally is 7*2 + 1 = 15; the source text states 16; recorded without resolving";
        out.push_back(r);
    }
    return out;
}

}  // namespace cyv
