#include "cyv/counting.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <nlohmann/json.hpp>

#include "cyv/fp.hpp"
#include "cyv/linalg.hpp"

namespace cyv {

namespace {

constexpr int kHadamard[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, 1, -1, -1}, {1, -1, -1, 1}};

const char* kCodeVersion = "1";

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

// N(v mod p) lookup with the argument pre-offset into [0, 4p).
struct OffsetTables {
    std::vector<std::uint32_t> n4;  // size 4p
    explicit OffsetTables(const PrimeField& f) {
        std::uint32_t p = f.modulus();
        n4.resize(4 * p);
        for (std::uint32_t t = 0; t < 4 * p; ++t) n4[t] = f.sqrt_count(t % p);
    }
};

}  // namespace

long long count_formula(std::uint32_t p, long long ap) {
    long long pl = p;
    return 1 + pl * pl * pl - ap + 16 * (pl + pl * pl) - 12 * (2 * pl + pl * pl);
}

CountResult count_x_charsum(std::uint32_t p, unsigned jobs) {
    auto t0 = std::chrono::steady_clock::now();
    PrimeField f(p);
    OffsetTables tab(f);
    // squares with multiplicities: value x^2 for x in [0, (p-1)/2], weight 2
    // except x = 0. Reorganizes the sum over F_p^4 without changing it.
    std::uint32_t half = (p + 1) / 2;
    std::vector<std::uint32_t> sq(half);
    std::vector<std::uint32_t> mult(half);
    for (std::uint32_t x = 0; x < half; ++x) {
        sq[x] = f.mul(x, x);
        mult[x] = (x == 0) ? 1 : 2;
    }
    const std::uint32_t twop = 2 * p;
    auto worker = [&](std::uint32_t j0_lo, std::uint32_t j0_hi) -> long long {
        long long acc = 0;
        for (std::uint32_t j0 = j0_lo; j0 < j0_hi; ++j0) {
            std::uint32_t a = sq[j0];
            for (std::uint32_t j1 = 0; j1 < half; ++j1) {
                std::uint32_t b = sq[j1];
                std::uint32_t m01 = mult[j0] * mult[j1];
                for (std::uint32_t j2 = 0; j2 < half; ++j2) {
                    std::uint32_t c = sq[j2];
                    std::uint32_t m012 = m01 * mult[j2];
                    // Q0 = a+b+c+d, Q1 = a-b+c-d, Q2 = a+b-c-d, Q3 = a-b-c+d
                    std::uint32_t s0 = a + b + c;           // + d
                    std::uint32_t s1 = a + twop - b + c;    // - d  (offset 2p)
                    std::uint32_t s2 = a + b + twop - c;    // - d
                    std::uint32_t s3 = a + twop - b - c + twop;  // + d? no: a-b-c+d, offset 2p
                    long long inner = 0;
                    for (std::uint32_t j3 = 0; j3 < half; ++j3) {
                        std::uint32_t d = sq[j3];
                        inner += static_cast<long long>(mult[j3]) * tab.n4[s0 + d] *
                                 tab.n4[s1 - d] * tab.n4[s2 - d] * tab.n4[s3 + d - twop];
                    }
                    acc += static_cast<long long>(m012) * inner;
                }
            }
        }
        return acc;
    };
    long long A = 0;
    if (jobs <= 1) {
        A = worker(0, half);
    } else {
        std::vector<long long> partial(jobs, 0);
        std::vector<std::thread> threads;
        for (unsigned t = 0; t < jobs; ++t) {
            std::uint32_t lo = static_cast<std::uint32_t>(static_cast<std::uint64_t>(half) * t / jobs);
            std::uint32_t hi = static_cast<std::uint32_t>(static_cast<std::uint64_t>(half) * (t + 1) / jobs);
            threads.emplace_back([&partial, t, lo, hi, &worker] { partial[t] = worker(lo, hi); });
        }
        for (auto& th : threads) th.join();
        for (long long v : partial) A += v;  // deterministic order
    }
    if ((A - 1) % (p - 1) != 0) throw std::logic_error("count_x_charsum: scaling orbit violation");
    CountResult r;
    r.variety = "X";
    r.p = p;
    r.affine = A;
    r.projective = (A - 1) / (p - 1);
    r.ms = elapsed_ms(t0);
    return r;
}

namespace {

// Iterate projective representatives of P^{n-1}(F_p) (first nonzero = 1).
template <class Fn>
void for_each_projective(std::uint32_t p, unsigned n, Fn&& fn) {
    std::vector<std::uint32_t> x(n, 0);
    for (unsigned lead = 0; lead < n; ++lead) {
        std::fill(x.begin(), x.end(), 0u);
        x[lead] = 1;
        // free coordinates after `lead`
        unsigned nfree = n - lead - 1;
        std::vector<std::uint32_t> idx(nfree, 0);
        while (true) {
            for (unsigned i = 0; i < nfree; ++i) x[lead + 1 + i] = idx[i];
            fn(x);
            unsigned c = 0;
            while (c < nfree) {
                if (++idx[c] < p) break;
                idx[c] = 0;
                ++c;
            }
            if (c == nfree) break;
        }
    }
}

long long charsum_cover_p3(const PrimeField& f, int which) {
    // which: 0 = bidouble N(D1)N(D2); 1 = eq.(1) model N(D1)N(disc);
    // 2 = symmetric model; 3 = [D1 = 0]; 4 = [D2 = 0]
    const std::uint32_t p = f.modulus();
    long long total = 0;
    for_each_projective(p, 4, [&](const std::vector<std::uint32_t>& x) {
        std::uint32_t d1 = f.mul(f.mul(x[0], x[1]), f.mul(x[2], x[3]));
        std::uint32_t h1 = f.add(f.add(x[0], x[1]), f.add(x[2], x[3]));
        std::uint32_t h2 = f.add(f.sub(x[0], x[1]), f.sub(x[3], x[2]));
        std::uint32_t h3 = f.add(f.sub(x[0], x[1]), f.sub(x[2], x[3]));
        std::uint32_t h4 = f.sub(f.add(x[0], x[1]), f.add(x[2], x[3]));
        std::uint32_t d2 = f.mul(f.mul(h1, h2), f.mul(h3, h4));
        switch (which) {
            case 0: total += static_cast<long long>(f.sqrt_count(d1)) * f.sqrt_count(d2); break;
            case 1: {
                std::uint32_t q0 = f.mul(x[0], x[0]), q1 = f.mul(x[1], x[1]),
                              q2 = f.mul(x[2], x[2]), q3 = f.mul(x[3], x[3]);
                std::uint32_t S = f.sub(f.add(f.add(q0, q1), q3), q2);
                std::uint32_t C = f.sub(
                    f.add(f.add(f.mul(q0, q1), f.mul(q0, q3)), f.mul(q1, q3)),
                    f.add(d1, d1));
                std::uint32_t disc = f.sub(f.mul(S, S), f.mul(4 % p, C));
                total += static_cast<long long>(f.sqrt_count(d1)) * f.sqrt_count(disc);
                break;
            }
            case 2: {
                std::uint32_t q0 = f.mul(x[0], x[0]), q1 = f.mul(x[1], x[1]),
                              q2 = f.mul(x[2], x[2]), q3 = f.mul(x[3], x[3]);
                std::uint32_t f1 = f.mul(f.sub(q0, q1), f.sub(q2, q3));
                std::uint32_t f2 = f.mul(f.sub(q0, q2), f.sub(q1, q3));
                total += static_cast<long long>(f.sqrt_count(f1)) * f.sqrt_count(f2);
                break;
            }
            case 3: total += (d1 == 0) ? 1 : 0; break;
            case 4: total += (d2 == 0) ? 1 : 0; break;
        }
    });
    return total;
}

long long charsum_verr(const PrimeField& f) {
    const std::uint32_t p = f.modulus();
    // factors depend on squares only; iterate square values with multiplicity
    std::uint32_t half = (p + 1) / 2;
    std::vector<std::uint32_t> sq(half), mult(half);
    for (std::uint32_t x = 0; x < half; ++x) {
        sq[x] = f.mul(x, x);
        mult[x] = x == 0 ? 1 : 2;
    }
    std::vector<std::uint32_t> n2(2 * p);
    for (std::uint32_t t = 0; t < 2 * p; ++t) n2[t] = f.sqrt_count(t % p);
    long long A = 0;
    for (std::uint32_t j0 = 0; j0 < half; ++j0)
        for (std::uint32_t j1 = 0; j1 < half; ++j1)
            for (std::uint32_t j2 = 0; j2 < half; ++j2)
                for (std::uint32_t j3 = 0; j3 < half; ++j3) {
                    long long m = static_cast<long long>(mult[j0]) * mult[j1] * mult[j2] * mult[j3];
                    A += m * n2[sq[j0] + p - sq[j1]] * n2[sq[j1] + p - sq[j2]] *
                         n2[sq[j2] + p - sq[j3]] * n2[sq[j3] + p - sq[j0]];
                }
    return A;  // affine count over F_p^8
}

long long charsum_beauville(const PrimeField& f) {
    const std::uint32_t p = f.modulus();
    long long total = 0;
    for_each_projective(p, 3, [&](const std::vector<std::uint32_t>& x) {
        std::uint32_t q0 = f.mul(x[0], x[0]), q1 = f.mul(x[1], x[1]), q2 = f.mul(x[2], x[2]);
        total += static_cast<long long>(f.sqrt_count(f.sub(q0, q1))) * f.sqrt_count(f.sub(q1, q2));
    });
    return total;
}

}  // namespace

CountResult count_variety_charsum(const std::string& name, std::uint32_t p) {
    auto t0 = std::chrono::steady_clock::now();
    PrimeField f(p);
    CountResult r;
    r.variety = name;
    r.p = p;
    long long pl = p;
    if (name == "X") {
        return count_x_charsum(p);
    } else if (name == "Ybid" || name == "Y" || name == "Ysym") {
        int which = name == "Ybid" ? 0 : (name == "Y" ? 1 : 2);
        r.projective = charsum_cover_p3(f, which);
        r.affine = r.projective * (pl - 1) + 1;
    } else if (name == "D1" || name == "D2") {
        r.projective = charsum_cover_p3(f, name == "D1" ? 3 : 4);
        r.affine = r.projective * (pl - 1) + 1;
    } else if (name == "Verr") {
        r.affine = charsum_verr(f);
        if ((r.affine - 1) % (pl - 1) != 0)
            throw std::logic_error("count_variety_charsum: divisibility violated");
        r.projective = (r.affine - 1) / (pl - 1);
    } else if (name == "Beauville") {
        r.projective = charsum_beauville(f);
        r.affine = r.projective * (pl - 1) + 1;
    } else {
        throw std::invalid_argument("count_variety_charsum: unknown variety " + name);
    }
    r.ms = elapsed_ms(t0);
    return r;
}

K3FiberEquations k3_fiber_equations(long s, long t) {
    if (s == 0 && t == 0) throw std::invalid_argument("k3_fiber_equations: (0,0)");
    K3FiberEquations fe{PolyRing::make({"x0", "x1", "x2", "y4", "y5"}, {1, 1, 1, 2, 1}), {}};
    const PolyRing& R = fe.ring;
    MultiPoly x0 = MultiPoly::variable(R, 0), x1 = MultiPoly::variable(R, 1),
              x2 = MultiPoly::variable(R, 2), y4 = MultiPoly::variable(R, 3),
              y5 = MultiPoly::variable(R, 4);
    // the plane sx2 + tx3 = 0 slice of the bidouble model, t-cleared
    MultiPoly l1 = x0.scale(t) + x1.scale(t) + x2.scale(t - s);
    MultiPoly l2 = x0.scale(t) - x1.scale(t) + x2.scale(-t - s);
    MultiPoly l3 = x0.scale(t) - x1.scale(t) + x2.scale(t + s);
    MultiPoly l4 = x0.scale(t) + x1.scale(t) + x2.scale(-t + s);
    fe.eqs.push_back(y5.pow(2) - x0 * x1);
    fe.eqs.push_back(y4.pow(2) - l1 * l2 * l3 * l4);
    return fe;
}

CountResult count_k3_fiber_charsum(long s, long t, std::uint32_t p) {
    auto t0 = std::chrono::steady_clock::now();
    PrimeField f(p);
    K3FiberEquations fe = k3_fiber_equations(s, t);
    // quartic from the second equation: y4^2 - quartic
    MultiPoly quartic = MultiPoly::variable(fe.ring, 3).pow(2) - fe.eqs[1];
    long long total = 0;
    for_each_projective(p, 3, [&](const std::vector<std::uint32_t>& x) {
        std::vector<std::uint32_t> pt = {x[0], x[1], x[2], 0, 0};
        std::uint32_t pair = f.mul(x[0], x[1]);
        std::uint32_t q4 = quartic.eval_mod(f, pt);
        total += static_cast<long long>(f.sqrt_count(pair)) * f.sqrt_count(q4);
    });
    CountResult r;
    std::ostringstream nm;
    nm << "K3(" << s << ":" << t << ")";
    r.variety = nm.str();
    r.p = p;
    r.projective = total;
    r.affine = total * (static_cast<long long>(p) - 1) + 1;
    r.ms = elapsed_ms(t0);
    return r;
}

namespace {

// Exhaustive weighted-projective oracle: enumerate affine-cone solutions,
// group them into orbits of x_i -> l^{w_i} x_i, check each orbit has the full
// p-1 points, and count orbits.
CountResult naive_weighted(const WeightedVariety& w, std::uint32_t p) {
    auto t0 = std::chrono::steady_clock::now();
    PrimeField f(p);
    const unsigned n = static_cast<unsigned>(w.ring.nvars());
    std::vector<std::uint32_t> x(n, 0);
    std::set<std::vector<std::uint32_t>> sols;
    // enumerate F_p^n
    while (true) {
        bool ok = true, all0 = true;
        for (auto v : x) all0 = all0 && v == 0;
        if (!all0) {
            for (const MultiPoly& e : w.equations)
                if (e.eval_mod(f, x) != 0) {
                    ok = false;
                    break;
                }
            if (ok) sols.insert(x);
        }
        unsigned c = 0;
        while (c < n) {
            if (++x[c] < p) break;
            x[c] = 0;
            ++c;
        }
        if (c == n) break;
    }
    long long orbits = 0;
    std::set<std::vector<std::uint32_t>> seen;
    for (const auto& sol : sols) {
        if (seen.count(sol)) continue;
        std::set<std::vector<std::uint32_t>> orbit;
        for (std::uint32_t lam = 1; lam < p; ++lam) {
            std::vector<std::uint32_t> y(n);
            for (unsigned i = 0; i < n; ++i)
                y[i] = f.mul(sol[i], f.pow(lam, static_cast<std::uint64_t>(w.ring.weights[i])));
            orbit.insert(y);
        }
        if (orbit.size() != p - 1)
            throw std::logic_error("naive_weighted: short scaling orbit; projective division invalid");
        for (const auto& y : orbit) {
            if (!sols.count(y)) throw std::logic_error("naive_weighted: orbit leaves the solution set");
            seen.insert(y);
        }
        ++orbits;
    }
    CountResult r;
    r.variety = w.name;
    r.p = p;
    r.affine = static_cast<long long>(sols.size()) + 1;
    r.projective = orbits;
    r.ms = elapsed_ms(t0);
    return r;
}

}  // namespace

CountResult count_naive(const Catalog& cat, const std::string& name, std::uint32_t p) {
    const WeightedVariety* w = cat.by_name(name);
    if (!w) throw std::invalid_argument("count_naive: unknown variety " + name);
    return naive_weighted(*w, p);
}

CountResult count_k3_fiber_naive(long s, long t, std::uint32_t p) {
    K3FiberEquations fe = k3_fiber_equations(s, t);
    WeightedVariety w{"K3", fe.ring, fe.eqs};
    CountResult r = naive_weighted(w, p);
    std::ostringstream nm;
    nm << "K3(" << s << ":" << t << ")";
    r.variety = nm.str();
    return r;
}

bool NodeInventory::contains(const std::array<std::uint32_t, 8>& c) const {
    SingularPoint probe{c, 0};
    auto it = std::lower_bound(points.begin(), points.end(), probe);
    return it != points.end() && it->coord == c;
}

namespace {

NodeInventory singular_points_uncached(std::uint32_t p, unsigned k);

}  // namespace

NodeInventory singular_points(std::uint32_t p, unsigned k) {
    static std::map<std::pair<std::uint32_t, unsigned>, NodeInventory> memo;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(p, k);
    auto it = memo.find(key);
    if (it == memo.end()) it = memo.emplace(key, singular_points_uncached(p, k)).first;
    return it->second;
}

namespace {

NodeInventory singular_points_uncached(std::uint32_t p, unsigned k) {
    ExtField F(p, k);
    const std::uint64_t q = F.order();
    if (q > 100000) throw std::invalid_argument("singular_points: field size capped at 1e5");
    double budget = static_cast<double>(q) * q * q * q * 16;
    if (budget > 4e9) throw std::invalid_argument("singular_points: exhaustive budget exceeded");

    using E = ExtField::Elem;
    NodeInventory inv;
    inv.p = p;
    inv.k = k;
    std::set<SingularPoint> pts;

    std::vector<E> elems(q);
    for (std::uint64_t i = 0; i < q; ++i) elems[i] = F.from_index(i);
    // square roots per index
    std::vector<std::vector<std::uint64_t>> roots(q);
    for (std::uint64_t i = 0; i < q; ++i) {
        E sqv = F.mul(elems[i], elems[i]);
        roots[F.index(sqv)].push_back(i);
    }
    for (auto& rt : roots) {
        std::sort(rt.begin(), rt.end());
        rt.erase(std::unique(rt.begin(), rt.end()), rt.end());
    }

    std::array<std::uint64_t, 4> xi{};
    auto rank_of_zero_rows = [&](const std::array<E, 4>& X, const std::vector<int>& zero_rows) {
        // rank of rows {H_ij * X_j} over F_q
        std::vector<std::array<E, 4>> M;
        for (int i : zero_rows) {
            std::array<E, 4> row;
            for (int j = 0; j < 4; ++j) {
                row[static_cast<std::size_t>(j)] =
                    kHadamard[i][j] == 1 ? X[static_cast<std::size_t>(j)]
                                         : F.neg(X[static_cast<std::size_t>(j)]);
            }
            M.push_back(row);
        }
        unsigned rank = 0;
        for (int c = 0; c < 4 && rank < M.size(); ++c) {
            std::size_t pr = rank;
            while (pr < M.size() && F.is_zero(M[pr][static_cast<std::size_t>(c)])) ++pr;
            if (pr == M.size()) continue;
            std::swap(M[rank], M[pr]);
            E inv_p = F.inv(M[rank][static_cast<std::size_t>(c)]);
            for (int j = c; j < 4; ++j)
                M[rank][static_cast<std::size_t>(j)] = F.mul(M[rank][static_cast<std::size_t>(j)], inv_p);
            for (std::size_t r2 = rank + 1; r2 < M.size(); ++r2) {
                E m = M[r2][static_cast<std::size_t>(c)];
                if (F.is_zero(m)) continue;
                for (int j = c; j < 4; ++j)
                    M[r2][static_cast<std::size_t>(j)] = F.sub(
                        M[r2][static_cast<std::size_t>(j)], F.mul(m, M[rank][static_cast<std::size_t>(j)]));
            }
            ++rank;
        }
        return rank;
    };

    // iterate X in F_q^4
    for (xi[0] = 0; xi[0] < q; ++xi[0])
        for (xi[1] = 0; xi[1] < q; ++xi[1])
            for (xi[2] = 0; xi[2] < q; ++xi[2])
                for (xi[3] = 0; xi[3] < q; ++xi[3]) {
                    if (xi[0] == 0 && xi[1] == 0 && xi[2] == 0 && xi[3] == 0) continue;
                    std::array<E, 4> X{elems[xi[0]], elems[xi[1]], elems[xi[2]], elems[xi[3]]};
                    std::array<E, 4> Q;
                    std::array<E, 4> sqX;
                    for (int j = 0; j < 4; ++j) sqX[static_cast<std::size_t>(j)] = F.mul(X[static_cast<std::size_t>(j)], X[static_cast<std::size_t>(j)]);
                    bool solvable = true;
                    for (int i = 0; i < 4 && solvable; ++i) {
                        E acc = F.zero();
                        for (int j = 0; j < 4; ++j) {
                            acc = kHadamard[i][j] == 1 ? F.add(acc, sqX[static_cast<std::size_t>(j)])
                                                       : F.sub(acc, sqX[static_cast<std::size_t>(j)]);
                        }
                        Q[static_cast<std::size_t>(i)] = acc;
                        if (roots[F.index(acc)].empty()) solvable = false;
                    }
                    if (!solvable) continue;
                    // a singular point needs at least one Y_i = 0, i.e. Q_i = 0
                    std::vector<int> zero_candidates;
                    for (int i = 0; i < 4; ++i)
                        if (F.is_zero(Q[static_cast<std::size_t>(i)])) zero_candidates.push_back(i);
                    if (zero_candidates.empty()) continue;
                    unsigned nz_rank = rank_of_zero_rows(X, zero_candidates);
                    unsigned nonzero_count = 4 - static_cast<unsigned>(zero_candidates.size());
                    if (nonzero_count + nz_rank >= 4) continue;
                    // enumerate the Y combinations over this X
                    std::array<const std::vector<std::uint64_t>*, 4> choice;
                    for (int i = 0; i < 4; ++i) choice[static_cast<std::size_t>(i)] = &roots[F.index(Q[static_cast<std::size_t>(i)])];
                    for (std::uint64_t c0 : *choice[0])
                        for (std::uint64_t c1 : *choice[1])
                            for (std::uint64_t c2 : *choice[2])
                                for (std::uint64_t c3 : *choice[3]) {
                                    std::array<E, 8> v{X[0], X[1], X[2], X[3],
                                                       elems[c0], elems[c1], elems[c2], elems[c3]};
                                    // normalize: first nonzero coordinate = 1
                                    E lead = F.zero();
                                    for (const E& e : v)
                                        if (!F.is_zero(e)) {
                                            lead = e;
                                            break;
                                        }
                                    E li = F.inv(lead);
                                    SingularPoint sp{};
                                    for (int i = 0; i < 8; ++i)
                                        sp.coord[static_cast<std::size_t>(i)] =
                                            static_cast<std::uint32_t>(F.index(F.mul(v[static_cast<std::size_t>(i)], li)));
                                    sp.jacobian_rank = nonzero_count + nz_rank;
                                    pts.insert(sp);
                                }
                }
    inv.points.assign(pts.begin(), pts.end());
    return inv;
}

OrbitDecomposition node_orbits(const NodeInventory& inv) {
    ExtField F(inv.p, inv.k);
    std::set<std::array<std::uint32_t, 8>> remaining;
    for (const auto& sp : inv.points) remaining.insert(sp.coord);
    OrbitDecomposition dec{0, {}};
    auto K = group_K();
    while (!remaining.empty()) {
        auto seed = *remaining.begin();
        std::set<std::array<std::uint32_t, 8>> orbit;
        for (const SignVector& g : K) {
            std::array<ExtField::Elem, 8> v;
            for (int i = 0; i < 8; ++i) {
                ExtField::Elem e = F.from_index(seed[static_cast<std::size_t>(i)]);
                v[static_cast<std::size_t>(i)] = g.eps[static_cast<std::size_t>(i)] == 1 ? e : F.neg(e);
            }
            ExtField::Elem lead = F.zero();
            for (const auto& e : v)
                if (!F.is_zero(e)) {
                    lead = e;
                    break;
                }
            ExtField::Elem li = F.inv(lead);
            std::array<std::uint32_t, 8> norm;
            for (int i = 0; i < 8; ++i)
                norm[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(F.index(F.mul(v[static_cast<std::size_t>(i)], li)));
            orbit.insert(norm);
        }
        for (const auto& pt : orbit) {
            if (!remaining.erase(pt))
                throw std::logic_error("node_orbits: orbit left the inventory");
        }
        dec.sizes.push_back(orbit.size());
        ++dec.orbit_count;
    }
    std::sort(dec.sizes.begin(), dec.sizes.end());
    return dec;
}

std::vector<CheckReport> beauville_singularities(std::uint32_t p) {
    std::vector<CheckReport> out;
    if (p % 4 != 1) throw std::invalid_argument("beauville_singularities: need p = 1 mod 4");
    PrimeField f(p);
    std::uint32_t i_unit = 0;
    for (std::uint32_t x = 1; x < p; ++x)
        if (f.mul(x, x) == p - 1) {
            i_unit = x;
            break;
        }
    Catalog cat;
    const WeightedVariety& S = cat.beauville();

    auto on_surface = [&](const std::vector<std::uint32_t>& pt) {
        for (const MultiPoly& e : S.equations)
            if (e.eval_mod(f, pt) != 0) return false;
        return true;
    };
    auto jac_rank = [&](const std::vector<std::uint32_t>& pt) {
        Matrix<PrimeField> J(f, S.equations.size(), 5);
        for (std::size_t r = 0; r < S.equations.size(); ++r)
            for (std::size_t c = 0; c < 5; ++c)
                J.at(r, c) = S.equations[r].derivative(c).eval_mod(f, pt);
        return J.rank();
    };

    std::vector<std::pair<std::string, std::vector<std::uint32_t>>> singulars = {
        {"(0:0:1:0:i)", {0, 0, 1, 0, i_unit}},
        {"(0:0:1:0:-i)", {0, 0, 1, 0, f.neg(i_unit)}},
        {"(1:0:0:1:0)", {1, 0, 0, 1, 0}},
        {"(1:0:0:-1:0)", {1, 0, 0, f.neg(1), 0}},
    };
    for (const auto& [name, pt] : singulars) {
        bool on = on_surface(pt);
        std::size_t rk = jac_rank(pt);
        CheckReport r = CheckReport::make("beauville/singular_" + name,
                                          "listed singular points of the double-quadric surface", "paper");
        r.expect("on surface, Jacobian rank < 2");
        std::ostringstream got;
        got << (on ? "on" : "off") << ", rank " << rk;
        r.got(got.str());
        r.outcome(on && rk < 2);
        out.push_back(r);
    }
    std::vector<std::pair<std::string, std::vector<std::uint32_t>>> indet = {
        {"(0:1:0:i:1)", {0, 1, 0, i_unit, 1}},
        {"(0:1:0:i:-1)", {0, 1, 0, i_unit, f.neg(1)}},
        {"(0:1:0:-i:1)", {0, 1, 0, f.neg(i_unit), 1}},
        {"(0:1:0:-i:-1)", {0, 1, 0, f.neg(i_unit), f.neg(1)}},
    };
    for (const auto& [name, pt] : indet) {
        bool on = on_surface(pt) && pt[0] == 0 && pt[2] == 0;
        CheckReport r = CheckReport::make("beauville/indeterminacy_" + name,
                                          "projection base points on x0 = x2 = 0", "paper");
        r.expect("on surface with x0 = x2 = 0");
        r.got(on ? "yes" : "no");
        r.outcome(on);
        out.push_back(r);
    }
    // a smooth point probe: find a surface point with full Jacobian rank
    {
        bool found = false;
        std::vector<std::uint32_t> probe;
        for (std::uint32_t a = 1; a < p && !found; ++a)
            for (std::uint32_t b = 0; b < p && !found; ++b) {
                // x = (1, a, b): u0^2 = 1 - a^2, u1^2 = a^2 - b^2
                std::uint32_t q0 = f.sub(1, f.mul(a, a));
                std::uint32_t q1 = f.sub(f.mul(a, a), f.mul(b, b));
                if (q0 == 0 || q1 == 0) continue;
                if (f.quadratic_character(q0) < 0 || f.quadratic_character(q1) < 0) continue;
                probe = {1, a, b, f.sqrt(q0), f.sqrt(q1)};
                found = true;
            }
        CheckReport r = CheckReport::make("beauville/smooth_probe", "generic point has full Jacobian rank", "derived");
        if (found) {
            std::size_t rk = jac_rank(probe);
            r.expect("rank 2");
            std::ostringstream got;
            got << "rank " << rk;
            r.got(got.str());
            r.outcome(rk == 2);
        } else {
            r.status = CheckStatus::Skipped;
        }
        out.push_back(r);
    }
    return out;
}

namespace {

std::string cache_path(const std::string& dir, const std::string& variety, std::uint32_t p,
                       unsigned k) {
    std::ostringstream os;
    os << dir << "/count_" << variety << "_p" << p << "_k" << k << "_v" << kCodeVersion << ".json";
    return os.str();
}

}  // namespace

std::optional<CountResult> cache_lookup(const std::string& dir, const std::string& variety,
                                        std::uint32_t p, unsigned k) {
    if (dir.empty()) return std::nullopt;
    std::ifstream in(cache_path(dir, variety, p, k));
    if (!in) return std::nullopt;
    try {
        nlohmann::json j;
        in >> j;
        CountResult r;
        r.variety = j.at("variety").get<std::string>();
        r.p = j.at("p").get<std::uint32_t>();
        r.k = j.at("k").get<unsigned>();
        r.affine = j.at("affine").get<long long>();
        r.projective = j.at("projective").get<long long>();
        r.ms = 0;
        return r;
    } catch (...) {
        return std::nullopt;
    }
}

void cache_store(const std::string& dir, const CountResult& r) {
    if (dir.empty()) return;
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    nlohmann::json j;
    j["variety"] = r.variety;
    j["p"] = r.p;
    j["k"] = r.k;
    j["affine"] = r.affine;
    j["projective"] = r.projective;
    std::ofstream out(cache_path(dir, r.variety, r.p, r.k));
    out << j.dump(2) << "\n";
}

std::vector<CheckReport> verify_modularity(std::uint32_t pmax, unsigned jobs,
                                           const std::string& cache_dir) {
    std::vector<CheckReport> out;
    bool x_all_match_formula = true;
    for (std::uint32_t p = 3; p <= pmax; ++p) {
        bool prime = true;
        for (std::uint32_t d = 2; d * d <= p; ++d)
            if (p % d == 0) prime = false;
        if (!prime || p == 2) continue;
        long long ap = cusp_form_ap(p);
        long long expected = count_formula(p, ap);

        CountResult qr;
        if (auto hit = cache_lookup(cache_dir, "Ybid", p, 1)) {
            qr = *hit;
        } else {
            qr = count_variety_charsum("Ybid", p);
            cache_store(cache_dir, qr);
        }
        CheckReport r = CheckReport::make("modularity/p" + std::to_string(p),
                                          "count formula against the quotient model", "paper");
        r.expect(std::to_string(expected));
        r.got(std::to_string(qr.projective));
        r.outcome(qr.projective == expected);
        r.ms = static_cast<long long>(qr.ms);
        out.push_back(r);

        CountResult xr;
        if (auto hit = cache_lookup(cache_dir, "X", p, 1)) {
            xr = *hit;
        } else {
            xr = count_x_charsum(p, jobs);
            cache_store(cache_dir, xr);
        }
        if (xr.projective != expected) x_all_match_formula = false;
    }
    CheckReport flag = CheckReport::make("modularity/model_attribution",
                                         "which model the count formula describes", "derived");
    flag.expect("formula matches the quotient, not the quadric model in P^7");
    flag.got(x_all_match_formula ? "P^7 model unexpectedly matches"
                                 : "P^7 model differs; quotient matches");
    flag.status = x_all_match_formula ? CheckStatus::Fail : CheckStatus::FlaggedDiscrepancy;
    flag.note = "the source attributes the closed form to the P^7 quadric model; the computed counts show it "
                "holds for the quotient (recorded source typo)";
    out.push_back(flag);
    return out;
}

}  // namespace cyv
