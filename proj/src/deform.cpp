#include "cyv/deform.hpp"

#include <algorithm>
#include <stdexcept>

#include "cyv/fp.hpp"

namespace cyv {

namespace {

// all derivative multi-indices of order <= bound in 4 variables
std::vector<std::array<int, 4>> derivative_indices(int bound) {
    std::vector<std::array<int, 4>> out;
    for (int a = 0; a <= bound; ++a)
        for (int b = 0; a + b <= bound; ++b)
            for (int c = 0; a + b + c <= bound; ++c)
                for (int d = 0; a + b + c + d <= bound; ++d) out.push_back({a, b, c, d});
    return out;
}

long long falling_factorial(int e, int a) {
    long long r = 1;
    for (int i = 0; i < a; ++i) r *= e - i;
    return r;
}

// value of d^alpha (x^mono) at the point P
Rational derivative_monomial_at(const Monomial& mono, const std::array<int, 4>& alpha,
                                const Vec4& P) {
    Rational c(1);
    for (int j = 0; j < 4; ++j) {
        if (mono.e[static_cast<std::size_t>(j)] < alpha[static_cast<std::size_t>(j)]) return Rational(0);
        c *= Rational(static_cast<long>(
            falling_factorial(mono.e[static_cast<std::size_t>(j)], alpha[static_cast<std::size_t>(j)])));
    }
    for (int j = 0; j < 4; ++j) {
        int rem = mono.e[static_cast<std::size_t>(j)] - alpha[static_cast<std::size_t>(j)];
        for (int i = 0; i < rem; ++i) c *= P[static_cast<std::size_t>(j)];
    }
    return c;
}

// invertible matrix whose last two columns span the line
std::vector<std::vector<Rational>> line_chart_matrix(const ArrLine& l) {
    const RationalField QQ;
    std::vector<Vec4> cols = {l.p0, l.p1};  // will become columns 3, 4
    // complete with standard basis vectors keeping full rank
    for (int j = 0; j < 4 && cols.size() < 4; ++j) {
        Vec4 e{};
        e[static_cast<std::size_t>(j)] = 1;
        Matrix<RationalField> M(QQ, 0, 4);
        for (const Vec4& v : cols) M.append_row({v[0], v[1], v[2], v[3]});
        M.append_row({e[0], e[1], e[2], e[3]});
        if (M.rank() == cols.size() + 1) cols.push_back(e);
    }
    if (cols.size() != 4) throw std::logic_error("line_chart_matrix: completion failed");
    // x = A u with A columns (c2, c3, p0, p1): substitute_linear wants
    // images of each variable x_j as a row
    std::vector<std::vector<Rational>> A(4, std::vector<Rational>(4));
    for (std::size_t j = 0; j < 4; ++j) {
        A[j][0] = cols[2][j];
        A[j][1] = cols[3][j];
        A[j][2] = cols[0][j];
        A[j][3] = cols[1][j];
    }
    return A;
}

}  // namespace

OcticData::OcticData() : ring(PolyRing::make({"x0", "x1", "x2", "x3"})), F(ring) {
    IncidenceModel m = build_incidence();
    MultiPoly prod = MultiPoly::constant(ring, 1);
    for (int q = 0; q < 2; ++q)
        for (const Vec4& pl : m.planes[static_cast<std::size_t>(q)]) {
            MultiPoly lf(ring);
            for (std::size_t j = 0; j < 4; ++j)
                if (pl[j] != 0) lf = lf + MultiPoly::variable(ring, j).scale(pl[j]);
            prod = prod * lf;
        }
    F = prod;
    for (std::size_t j = 0; j < 4; ++j) partials.push_back(F.derivative(j));
    points = m.fourfold;
    lines.insert(lines.end(), m.lines[0].begin(), m.lines[0].end());
    lines.insert(lines.end(), m.lines[1].begin(), m.lines[1].end());
}

Subspace<RationalField> jacobian_piece(const OcticData& oct, const RationalField& QQ,
                                       const MonomialBasis& basis) {
    Matrix<RationalField> rows(QQ, 0, basis.size());
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            rows.append_row(basis.coords(MultiPoly::variable(oct.ring, i) * oct.partials[j]));
    return Subspace<RationalField>::span(rows);
}

Subspace<RationalField> point_order_conditions(const OcticData& oct, const RationalField& QQ,
                                               const MonomialBasis& basis, const ArrPoint& P,
                                               int order) {
    (void)oct;
    Matrix<RationalField> cond(QQ, 0, basis.size());
    for (const auto& alpha : derivative_indices(order - 1)) {
        std::vector<Rational> row;
        row.reserve(basis.size());
        for (const Monomial& m : basis.monomials()) row.push_back(derivative_monomial_at(m, alpha, P.v));
        cond.append_row(row);
    }
    return Subspace<RationalField>::span(cond.kernel());
}

Subspace<RationalField> line_order_conditions(const OcticData& oct, const RationalField& QQ,
                                              const MonomialBasis& basis, const ArrLine& l,
                                              int order) {
    if (order != 2) throw std::invalid_argument("line_order_conditions: only order 2 is used");
    auto A = line_chart_matrix(l);
    // condition rows: coefficients of u-monomials with deg(u0) + deg(u1) <= 1
    // of each transformed basis monomial
    std::vector<Monomial> low;
    MonomialBasis full(oct.ring, 8);
    for (const Monomial& m : full.monomials())
        if (m.e[0] + m.e[1] <= 1) low.push_back(m);
    Matrix<RationalField> cond(QQ, low.size(), basis.size());
    for (std::size_t c = 0; c < basis.size(); ++c) {
        MultiPoly mono(oct.ring);
        mono.add_term(basis.monomials()[c], Rational(1));
        MultiPoly g = mono.substitute_linear(A);
        for (std::size_t r = 0; r < low.size(); ++r) cond.at(r, c) = g.coeff(low[r]);
    }
    return Subspace<RationalField>::span(cond.kernel());
}

EquisingularResult equisingular_h1_rational() {
    const RationalField QQ;
    OcticData oct;
    MonomialBasis basis(oct.ring, 8);
    Subspace<RationalField> J = jacobian_piece(oct, QQ, basis);
    Subspace<RationalField> T = Subspace<RationalField>::full(QQ, basis.size());
    for (const ArrPoint& P : oct.points)
        T = intersect(T, point_order_conditions(oct, QQ, basis, P, 4) + J);
    for (const ArrLine& l : oct.lines)
        T = intersect(T, line_order_conditions(oct, QQ, basis, l, 2) + J);
    if (!T.contains(J)) throw std::logic_error("equisingular: (J_F)_8 escaped the intersection");
    EquisingularResult r{};
    r.dim_jf8 = static_cast<long long>(J.dim());
    r.dim_ieq8 = static_cast<long long>(T.dim());
    r.h1 = r.dim_ieq8 - r.dim_jf8;
    return r;
}

EquisingularResult equisingular_h1_mod_p(std::uint32_t p) {
    // the rational matrices reduce mod p entry by entry; the linear algebra
    // is re-run over F_p as an independent certification witness
    PrimeField f(p);
    const RationalField QQ;
    OcticData oct;
    MonomialBasis basis(oct.ring, 8);

    auto reduce_subspace = [&](const Subspace<RationalField>& s) {
        Matrix<PrimeField> rows(f, s.basis().rows(), s.basis().cols());
        for (std::size_t r = 0; r < s.basis().rows(); ++r)
            for (std::size_t c = 0; c < s.basis().cols(); ++c)
                rows.at(r, c) = mod_p(s.basis().at(r, c), p);
        return Subspace<PrimeField>::span(rows);
    };
    Subspace<PrimeField> J = reduce_subspace(jacobian_piece(oct, QQ, basis));
    Subspace<PrimeField> T = Subspace<PrimeField>::full(f, basis.size());
    for (const ArrPoint& P : oct.points)
        T = intersect(T, reduce_subspace(point_order_conditions(oct, QQ, basis, P, 4)) + J);
    for (const ArrLine& l : oct.lines)
        T = intersect(T, reduce_subspace(line_order_conditions(oct, QQ, basis, l, 2)) + J);
    EquisingularResult r{};
    r.dim_jf8 = static_cast<long long>(J.dim());
    r.dim_ieq8 = static_cast<long long>(T.dim());
    r.h1 = r.dim_ieq8 - r.dim_jf8;
    return r;
}

std::vector<CheckReport> verify_equisingular() {
    std::vector<CheckReport> out;
    EquisingularResult rq = equisingular_h1_rational();
    {
        CheckReport r = CheckReport::make("equisingular/h1", "equisingular degree-8 quotient vanishes", "paper");
        r.expect("0").got(std::to_string(rq.h1)).outcome(rq.h1 == 0);
        r.note = "dim (J_F)_8 = " + std::to_string(rq.dim_jf8) +
                 ", dim (I_eq)_8 = " + std::to_string(rq.dim_ieq8);
        out.push_back(r);
    }
    for (std::uint32_t p : {1009u, 2003u}) {
        EquisingularResult rp = equisingular_h1_mod_p(p);
        CheckReport r = CheckReport::make("equisingular/certify_p" + std::to_string(p),
                                          "finite-field certification of the rational ranks", "derived");
        r.expect(std::to_string(rq.dim_jf8) + ", " + std::to_string(rq.dim_ieq8));
        r.got(std::to_string(rp.dim_jf8) + ", " + std::to_string(rp.dim_ieq8));
        r.outcome(rp.dim_jf8 == rq.dim_jf8 && rp.dim_ieq8 == rq.dim_ieq8);
        out.push_back(r);
    }
    return out;
}

}  // namespace cyv
