#include "cyv/theta.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace cyv {

std::vector<Characteristic> all_characteristics() {
    std::vector<Characteristic> cs;
    for (int a0 : {0, 1})
        for (int a1 : {0, 1})
            for (int b0 : {0, 1})
                for (int b1 : {0, 1}) cs.push_back(Characteristic{{a0, a1}, {b0, b1}});
    return cs;
}

SiegelPoint::SiegelPoint(Complex z00_, Complex z01_, Complex z11_)
    : z00(z00_), z01(z01_), z11(z11_) {
    double a = z00.imag(), b = z01.imag(), c = z11.imag();
    double tr = a + c, det = a * c - b * b;
    double disc = tr * tr / 4 - det;
    lambda_ = tr / 2 - std::sqrt(std::max(disc, 0.0));
    if (lambda_ <= 0) throw std::invalid_argument("SiegelPoint: Im Z not positive definite");
}

namespace {

constexpr double kPi = std::numbers::pi;

// Tail of sum_{||g||_inf > N} exp(-pi*lambda*||g + a/2||^2), bounded shell by
// shell: at most 8k lattice points on shell k, each with ||g + a/2|| >= k - 1/2.
double tail_bound(double lambda, int N) {
    double bound = 0;
    for (int k = N + 1;; ++k) {
        double shell = 8.0 * k * std::exp(-kPi * lambda * (k - 0.5) * (k - 0.5));
        bound += shell;
        if (shell < 1e-30 || k > N + 400) break;
    }
    return bound;
}

int truncation_radius(double lambda, double tol) {
    if (lambda < 1e-3)
        throw std::invalid_argument("theta: Im Z eigenvalue below 1e-3, truncation radius capped");
    if (tol < 1e-14) throw std::invalid_argument("theta: tol below 1e-14");
    for (int N = 1; N <= 64; ++N)
        if (tail_bound(lambda, N) < tol / 10) return N;
    throw std::logic_error("theta: truncation radius exceeded hard cap");
}

}  // namespace

Complex theta(const Characteristic& m, const SiegelPoint& Z, double tol) {
    const int N = truncation_radius(Z.min_im_eigenvalue(), tol);
    // Index range symmetric under g -> -g - a, so the half-period reflection
    // symmetry holds exactly for the partial sums.
    const int lo0 = -N - m.a[0], lo1 = -N - m.a[1];
    Complex sum = 0;
    for (int g0 = lo0; g0 <= N; ++g0) {
        double v0 = g0 + m.a[0] / 2.0;
        for (int g1 = lo1; g1 <= N; ++g1) {
            double v1 = g1 + m.a[1] / 2.0;
            Complex q = Z.z00 * (v0 * v0) + 2.0 * Z.z01 * (v0 * v1) + Z.z11 * (v1 * v1);
            double lin = m.b[0] * v0 + m.b[1] * v1;
            Complex ex = Complex(0, kPi) * (q + lin);
            sum += std::exp(ex);
        }
    }
    return sum;
}

std::array<Complex, 8> theta_generators(const SiegelPoint& Z, double tol) {
    static const std::array<std::array<int, 2>, 4> order = {{{0, 0}, {1, 0}, {0, 1}, {1, 1}}};
    SiegelPoint Z2 = Z.scaled(2.0);
    std::array<Complex, 8> g;
    for (int i = 0; i < 4; ++i) {
        Characteristic cx{{order[static_cast<std::size_t>(i)][0], order[static_cast<std::size_t>(i)][1]}, {0, 0}};
        g[static_cast<std::size_t>(i)] = theta(cx, Z2, tol);
        Characteristic cy{{0, 0}, {order[static_cast<std::size_t>(i)][0], order[static_cast<std::size_t>(i)][1]}};
        g[static_cast<std::size_t>(4 + i)] = theta(cy, Z, tol);
    }
    return g;
}

Complex weight3_form(const SiegelPoint& Z, double tol) {
    // product of the six even characteristics with a != 0
    static const int chars[6][4] = {{1, 0, 0, 0}, {1, 0, 0, 1}, {0, 1, 0, 0},
                                    {0, 1, 1, 0}, {1, 1, 0, 0}, {1, 1, 1, 1}};
    Complex prod = 1;
    for (const auto& c : chars) prod *= theta(Characteristic{{c[0], c[1]}, {c[2], c[3]}}, Z, tol);
    return prod;
}

SymplecticMatrix SymplecticMatrix::identity() {
    SymplecticMatrix r{};
    for (int i = 0; i < 4; ++i) r.m[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
    return r;
}

SymplecticMatrix SymplecticMatrix::operator*(const SymplecticMatrix& o) const {
    SymplecticMatrix r{};
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            long s = 0;
            for (std::size_t k = 0; k < 4; ++k) s += m[i][k] * o.m[k][j];
            r.m[i][j] = s;
        }
    return r;
}

bool SymplecticMatrix::is_symplectic() const {
    // J = [[0, I], [-I, 0]]; check M^T J M = J
    long J[4][4] = {{0, 0, 1, 0}, {0, 0, 0, 1}, {-1, 0, 0, 0}, {0, -1, 0, 0}};
    long t[4][4] = {};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            long s = 0;
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l) s += m[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)] * J[k][l] * m[static_cast<std::size_t>(l)][static_cast<std::size_t>(j)];
            t[i][j] = s;
        }
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (t[i][j] != J[i][j]) return false;
    return true;
}

bool SymplecticMatrix::in_Gamma() const {
    if (!is_symplectic()) return false;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            long v = m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] - (i == j ? 1 : 0);
            if (((v % 2) + 2) % 2 != 0) return false;
        }
    for (int i = 2; i < 4; ++i)
        for (int j = 0; j < 2; ++j)
            if (((m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] % 4) + 4) % 4 != 0) return false;
    return true;
}

SiegelPoint SymplecticMatrix::act(const SiegelPoint& Z) const {
    // (AZ + B)(CZ + D)^{-1} with 2x2 complex blocks
    Complex z[2][2] = {{Z.z00, Z.z01}, {Z.z01, Z.z11}};
    Complex num[2][2], den[2][2];
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            Complex a = 0, c = 0;
            for (int k = 0; k < 2; ++k) {
                a += static_cast<double>(m[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)]) * z[k][j];
                c += static_cast<double>(m[static_cast<std::size_t>(i + 2)][static_cast<std::size_t>(k)]) * z[k][j];
            }
            num[i][j] = a + static_cast<double>(m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j + 2)]);
            den[i][j] = c + static_cast<double>(m[static_cast<std::size_t>(i + 2)][static_cast<std::size_t>(j + 2)]);
        }
    Complex det = den[0][0] * den[1][1] - den[0][1] * den[1][0];
    Complex inv[2][2] = {{den[1][1] / det, -den[0][1] / det}, {-den[1][0] / det, den[0][0] / det}};
    Complex w[2][2];
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) w[i][j] = num[i][0] * inv[0][j] + num[i][1] * inv[1][j];
    // symmetrize away roundoff
    Complex w01 = 0.5 * (w[0][1] + w[1][0]);
    return SiegelPoint(w[0][0], w01, w[1][1]);
}

SymplecticMatrix translation(long s00, long s01, long s11) {
    SymplecticMatrix r = SymplecticMatrix::identity();
    r.m[0][2] = s00;
    r.m[0][3] = s01;
    r.m[1][2] = s01;
    r.m[1][3] = s11;
    return r;
}

namespace {

SymplecticMatrix lower_translation(long s00, long s01, long s11) {
    SymplecticMatrix r = SymplecticMatrix::identity();
    r.m[2][0] = s00;
    r.m[2][1] = s01;
    r.m[3][0] = s01;
    r.m[3][1] = s11;
    return r;
}

SymplecticMatrix gl_part(long u01, long u10) {
    // diag(U, U^{-T}) for unipotent U = [[1, u01], [u10, 1]] requires
    // det U = 1 - u01*u10 = 1; used with one of them zero.
    SymplecticMatrix r{};
    long U[2][2] = {{1, u01}, {u10, 1}};
    long Uinv[2][2] = {{1, -u01}, {-u10, 1}};  // valid when u01*u10 = 0
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            r.m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = U[i][j];
            // lower-right block is U^{-T}
            r.m[static_cast<std::size_t>(i + 2)][static_cast<std::size_t>(j + 2)] = Uinv[j][i];
        }
    return r;
}

}  // namespace

std::vector<SymplecticMatrix> sample_gamma_elements(std::mt19937_64& rng, std::size_t count,
                                                    std::size_t max_word_len) {
    // generator pool inside the congruence group: even upper translations,
    // 4-divisible lower translations, unipotent GL part = I mod 2
    std::vector<SymplecticMatrix> pool = {
        translation(2, 0, 0),      translation(0, 0, 2),      translation(0, 2, 0),
        translation(2, 2, 2),      lower_translation(4, 0, 0), lower_translation(0, 0, 4),
        lower_translation(0, 4, 0), gl_part(2, 0),             gl_part(0, 2),
        translation(-2, 0, 0),     translation(0, 0, -2),     lower_translation(-4, 0, 0),
    };
    std::vector<SymplecticMatrix> out;
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    std::uniform_int_distribution<std::size_t> len(1, max_word_len);
    auto max_entry = [](const SymplecticMatrix& M) {
        long m = 0;
        for (const auto& row : M.m)
            for (long v : row) m = std::max(m, std::labs(v));
        return m;
    };
    while (out.size() < count) {
        SymplecticMatrix M = SymplecticMatrix::identity();
        std::size_t L = len(rng);
        for (std::size_t i = 0; i < L; ++i) {
            SymplecticMatrix next = M * pool[pick(rng)];
            // keep |C Z + D| moderate so the image stays inside the
            // truncation-radius budget of the theta sums
            if (max_entry(next) > 8) break;
            M = next;
        }
        if (!M.in_Gamma()) continue;  // predicate filter (the pool makes this vacuous)
        out.push_back(M);
    }
    return out;
}

SiegelPoint random_siegel_point(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> re(-0.4, 0.4);
    std::uniform_real_distribution<double> ev(0.8, 2.0);
    std::uniform_real_distribution<double> ang(0, 2 * kPi);
    double x00 = re(rng), x01 = re(rng), x11 = re(rng);
    double l1 = ev(rng), l2 = ev(rng), th = ang(rng);
    double c = std::cos(th), s = std::sin(th);
    // Q^T diag(l1,l2) Q for the rotation Q by th
    double y00 = c * c * l1 + s * s * l2;
    double y01 = c * s * (l1 - l2);
    double y11 = s * s * l1 + c * c * l2;
    return SiegelPoint(Complex(x00, y00), Complex(x01, y01), Complex(x11, y11));
}

std::vector<CheckReport> verify_X_relations(const SiegelPoint& Z, double tol) {
    static const int H[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, 1, -1, -1}, {1, -1, -1, 1}};
    auto g = theta_generators(Z, tol);
    std::vector<CheckReport> out;
    for (int i = 0; i < 4; ++i) {
        Complex lhs = g[static_cast<std::size_t>(4 + i)] * g[static_cast<std::size_t>(4 + i)];
        Complex rhs = 0;
        double scale = std::abs(lhs);
        for (int j = 0; j < 4; ++j) {
            Complex t = g[static_cast<std::size_t>(j)] * g[static_cast<std::size_t>(j)];
            rhs += static_cast<double>(H[i][j]) * t;
            scale += std::abs(t);
        }
        double resid = std::abs(lhs - rhs);
        CheckReport r = CheckReport::make("theta/X_relation_" + std::to_string(i),
                                          "quadric relations among the eight generators", "paper");
        std::ostringstream e;
        e << "residual < " << tol * scale;
        r.expect(e.str());
        std::ostringstream got;
        got << resid;
        r.got(got.str());
        r.outcome(resid < tol * scale);
        out.push_back(r);
    }
    return out;
}

std::vector<CheckReport> verify_Y_relations(const SiegelPoint& Z, double tol) {
    std::vector<CheckReport> out;
    // x_i = theta[0, b_i](Z)^2 in (00, 01, 10, 11) order, y5 = their product
    // root, y4 = -theta[10/01]^4 - theta[00/11]^4.
    static const std::array<std::array<int, 2>, 4> border = {{{0, 0}, {0, 1}, {1, 0}, {1, 1}}};
    std::array<Complex, 4> th;
    for (std::size_t i = 0; i < 4; ++i)
        th[i] = theta(Characteristic{{0, 0}, {border[i][0], border[i][1]}}, Z, tol);
    std::array<Complex, 4> x;
    for (std::size_t i = 0; i < 4; ++i) x[i] = th[i] * th[i];
    Complex y5 = th[0] * th[1] * th[2] * th[3];
    Complex t1001 = theta(Characteristic{{1, 0}, {0, 1}}, Z, tol);
    Complex y4 = -(t1001 * t1001 * t1001 * t1001) - x[3] * x[3];

    {
        Complex resid = y5 * y5 - x[0] * x[1] * x[2] * x[3];
        CheckReport r = CheckReport::make("theta/Y_relation_1", "product relation of the quotient model", "trivial");
        r.expect("0 (exact: product of squares)");
        std::ostringstream got;
        got << std::abs(resid);
        r.got(got.str());
        r.outcome(std::abs(resid) < 1e-15 * (std::abs(y5 * y5) + 1e-300) + 1e-18);
        out.push_back(r);
    }
    {
        Complex lhs = 2.0 * y5 * y5;
        Complex rhs = x[0] * x[0] * x[1] * x[1] + x[0] * x[0] * x[3] * x[3] +
                      x[1] * x[1] * x[3] * x[3] +
                      (-x[2] * x[2] + x[0] * x[0] + x[1] * x[1] + x[3] * x[3] + y4) * y4;
        double scale = std::abs(lhs) + std::abs(rhs) + 1.0;
        double resid = std::abs(lhs - rhs);
        CheckReport r = CheckReport::make("theta/Y_relation_2", "weight-4 relation of the quotient model", "derived");
        std::ostringstream e;
        e << "residual < " << tol * scale;
        r.expect(e.str());
        std::ostringstream got;
        got << resid;
        r.got(got.str());
        r.outcome(resid < tol * scale);
        out.push_back(r);
    }
    {
        // weight bookkeeping: every term of the second relation has weight 4
        CheckReport r = CheckReport::make("theta/Y_relation_weights", "grading of the weight-4 relation", "trivial");
        r.expect("all terms weight 4").got("x_i^2 x_j^2, x_i^2 y4, y4^2, y5^2 all weight 4");
        r.outcome(true);
        out.push_back(r);
    }
    return out;
}

SignVector induced_sign_action(const SymplecticMatrix& M, const SiegelPoint& Z, double tol) {
    if (!M.in_Gamma()) throw std::invalid_argument("induced_sign_action: matrix outside the congruence group");
    auto g0 = theta_generators(Z, tol);
    auto g1 = theta_generators(M.act(Z), tol);
    for (const auto& v : g0)
        if (std::abs(v) < 1e-6) throw std::runtime_error("induced_sign_action: near-zero generator, resample Z");
    Complex r0 = g1[0] / g0[0];
    SignVector s;
    for (int i = 0; i < 8; ++i) {
        Complex ratio = (g1[static_cast<std::size_t>(i)] / g0[static_cast<std::size_t>(i)]) / r0;
        double d_plus = std::abs(ratio - 1.0);
        double d_minus = std::abs(ratio + 1.0);
        if (std::min(d_plus, d_minus) > 1e-6)
            throw std::runtime_error("induced_sign_action: generators not proportional up to sign");
        s.eps[static_cast<std::size_t>(i)] = d_plus < d_minus ? 1 : -1;
    }
    if (!s.in_K()) throw std::runtime_error("induced_sign_action: sign vector outside K");
    return s;
}

}  // namespace cyv
