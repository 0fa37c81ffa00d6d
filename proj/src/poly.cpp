#include "cyv/poly.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace cyv {

PolyRing PolyRing::make(std::vector<std::string> names, std::vector<int> weights) {
    if (names.size() > kMaxVars) throw std::invalid_argument("PolyRing: too many variables");
    if (weights.empty()) weights.assign(names.size(), 1);
    if (weights.size() != names.size()) throw std::invalid_argument("PolyRing: weights size");
    for (int w : weights)
        if (w <= 0) throw std::invalid_argument("PolyRing: weights must be positive");
    return PolyRing{std::move(names), std::move(weights)};
}

int PolyRing::var_index(const std::string& name) const {
    for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == name) return static_cast<int>(i);
    return -1;
}

bool operator==(const PolyRing& a, const PolyRing& b) {
    return a.names == b.names && a.weights == b.weights;
}

int Monomial::total_degree(std::size_t nvars) const {
    int d = 0;
    for (std::size_t i = 0; i < nvars; ++i) d += e[i];
    return d;
}

int Monomial::weighted_degree(const PolyRing& ring) const {
    int d = 0;
    for (std::size_t i = 0; i < ring.nvars(); ++i) d += ring.weights[i] * e[i];
    return d;
}

MultiPoly MultiPoly::constant(const PolyRing& ring, const Rational& c) {
    MultiPoly p(ring);
    if (c != 0) p.terms_[Monomial{}] = c;
    return p;
}

MultiPoly MultiPoly::variable(const PolyRing& ring, std::size_t j, int exp) {
    if (j >= ring.nvars()) throw std::out_of_range("MultiPoly::variable");
    MultiPoly p(ring);
    Monomial m;
    m.e[j] = static_cast<std::uint8_t>(exp);
    p.terms_[m] = 1;
    return p;
}

Rational MultiPoly::coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
}

void MultiPoly::add_term(const Monomial& m, const Rational& c) {
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        if (c != 0) terms_[m] = c;
        return;
    }
    it->second += c;
    if (it->second == 0) terms_.erase(it);
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
    MultiPoly r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, c);
    return r;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const {
    MultiPoly r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, -c);
    return r;
}

MultiPoly MultiPoly::operator-() const {
    MultiPoly r(ring_);
    for (const auto& [m, c] : terms_) r.terms_[m] = -c;
    return r;
}

MultiPoly MultiPoly::scale(const Rational& c) const {
    MultiPoly r(ring_);
    if (c == 0) return r;
    for (const auto& [m, v] : terms_) r.terms_[m] = v * c;
    return r;
}

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
    MultiPoly r(ring_);
    for (const auto& [ma, ca] : terms_) {
        for (const auto& [mb, cb] : o.terms_) {
            Monomial m;
            for (std::size_t i = 0; i < ring_.nvars(); ++i) {
                int s = ma.e[i] + mb.e[i];
                assert(s < 256);
                m.e[i] = static_cast<std::uint8_t>(s);
            }
            r.add_term(m, ca * cb);
        }
    }
    return r;
}

MultiPoly MultiPoly::pow(unsigned n) const {
    MultiPoly r = constant(ring_, 1);
    MultiPoly b = *this;
    while (n) {
        if (n & 1) r = r * b;
        b = b * b;
        n >>= 1;
    }
    return r;
}

MultiPoly MultiPoly::derivative(std::size_t j) const {
    MultiPoly r(ring_);
    for (const auto& [m, c] : terms_) {
        if (m.e[j] == 0) continue;
        Monomial m2 = m;
        m2.e[j] -= 1;
        r.add_term(m2, c * m.e[j]);
    }
    return r;
}

MultiPoly MultiPoly::substitute(const std::vector<MultiPoly>& images,
                                const PolyRing& target) const {
    if (images.size() != ring_.nvars()) throw std::invalid_argument("substitute: images size");
    MultiPoly r(target);
    for (const auto& [m, c] : terms_) {
        MultiPoly term = MultiPoly::constant(target, c);
        for (std::size_t j = 0; j < ring_.nvars(); ++j)
            if (m.e[j]) term = term * images[j].pow(m.e[j]);
        r = r + term;
    }
    return r;
}

MultiPoly MultiPoly::substitute_linear(const std::vector<std::vector<Rational>>& M) const {
    const std::size_t n = ring_.nvars();
    if (M.size() != n) throw std::invalid_argument("substitute_linear: matrix size");
    std::vector<MultiPoly> images;
    images.reserve(n);
    for (std::size_t j = 0; j < n; ++j) {
        if (M[j].size() != n) throw std::invalid_argument("substitute_linear: matrix size");
        MultiPoly img(ring_);
        for (std::size_t k = 0; k < n; ++k) {
            if (M[j][k] == 0) continue;
            if (ring_.weights[k] != ring_.weights[j])
                throw std::invalid_argument("substitute_linear: mixes variables of unequal weight");
            img = img + MultiPoly::variable(ring_, k).scale(M[j][k]);
        }
        images.push_back(img);
    }
    return substitute(images, ring_);
}

Rational MultiPoly::eval(const std::vector<Rational>& point) const {
    if (point.size() != ring_.nvars()) throw std::invalid_argument("eval: point size");
    Rational sum(0);
    for (const auto& [m, c] : terms_) {
        Rational t = c;
        for (std::size_t j = 0; j < ring_.nvars(); ++j)
            for (int k = 0; k < m.e[j]; ++k) t *= point[j];
        sum += t;
    }
    return sum;
}

std::uint32_t MultiPoly::eval_mod(const PrimeField& f,
                                  const std::vector<std::uint32_t>& point) const {
    if (point.size() != ring_.nvars()) throw std::invalid_argument("eval_mod: point size");
    std::uint32_t sum = 0;
    for (const auto& [m, c] : terms_) {
        std::uint32_t t = mod_p(c, f.modulus());
        for (std::size_t j = 0; j < ring_.nvars(); ++j)
            for (int k = 0; k < m.e[j]; ++k) t = f.mul(t, point[j]);
        sum = f.add(sum, t);
    }
    return sum;
}

int MultiPoly::total_degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, m.total_degree(ring_.nvars()));
    return d;
}

std::optional<int> MultiPoly::homogeneous_weighted_degree() const {
    std::optional<int> d;
    for (const auto& [m, c] : terms_) {
        int wd = m.weighted_degree(ring_);
        if (!d)
            d = wd;
        else if (*d != wd)
            return std::nullopt;
    }
    return d;
}

MultiPoly reduce_square_relations(MultiPoly p, const std::vector<SquareRelation>& rels) {
    // Replace v^2 by rhs one variable occurrence at a time; the total degree
    // in the rewritten variables strictly drops, so this terminates.
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& rel : rels) {
            MultiPoly next(p.ring());
            for (const auto& [m, c] : p.terms()) {
                if (m.e[rel.var] >= 2) {
                    Monomial m2 = m;
                    m2.e[rel.var] -= 2;
                    MultiPoly rest(p.ring());
                    rest.add_term(m2, c);
                    next = next + rest * rel.rhs;
                    changed = true;
                } else {
                    next.add_term(m, c);
                }
            }
            p = next;
        }
    }
    return p;
}

MonomialBasis::MonomialBasis(const PolyRing& ring, int degree) : ring_(ring), degree_(degree) {
    // enumerate all exponent tuples with weighted degree == degree
    std::vector<std::uint8_t> e(ring.nvars(), 0);
    std::vector<Monomial> out;
    // depth-first over variables
    struct Rec {
        const PolyRing& ring;
        int degree;
        std::vector<Monomial>& out;
        std::vector<std::uint8_t>& e;
        void go(std::size_t j, int rem) {
            if (j + 1 == ring.nvars()) {
                if (rem % ring.weights[j] == 0) {
                    e[j] = static_cast<std::uint8_t>(rem / ring.weights[j]);
                    Monomial m;
                    for (std::size_t i = 0; i < ring.nvars(); ++i) m.e[i] = e[i];
                    out.push_back(m);
                }
                return;
            }
            for (int k = 0; k * ring.weights[j] <= rem; ++k) {
                e[j] = static_cast<std::uint8_t>(k);
                go(j + 1, rem - k * ring.weights[j]);
            }
            e[j] = 0;
        }
    } rec{ring, degree, out, e};
    if (ring.nvars() > 0 && degree >= 0) rec.go(0, degree);
    std::sort(out.begin(), out.end(), [](const Monomial& a, const Monomial& b) { return b < a; });
    monos_ = std::move(out);
    for (std::size_t i = 0; i < monos_.size(); ++i) index_[monos_[i]] = i;
}

std::size_t MonomialBasis::index_of(const Monomial& m) const {
    auto it = index_.find(m);
    if (it == index_.end()) throw std::out_of_range("MonomialBasis::index_of");
    return it->second;
}

std::vector<Rational> MonomialBasis::coords(const MultiPoly& p) const {
    std::vector<Rational> v(monos_.size(), Rational(0));
    for (const auto& [m, c] : p.terms()) v[index_of(m)] = c;
    return v;
}

Subspace<RationalField> graded_piece(const RationalField& QQ,
                                     const std::vector<MultiPoly>& generators, int degree,
                                     const MonomialBasis& basis) {
    Matrix<RationalField> rows(QQ, 0, basis.size());
    if (generators.empty()) return Subspace<RationalField>::span(rows);
    const PolyRing& ring = generators.front().ring();
    for (const MultiPoly& g : generators) {
        auto gd = g.homogeneous_weighted_degree();
        if (!gd) throw std::invalid_argument("graded_piece: generator not homogeneous");
        int md = degree - *gd;
        if (md < 0) continue;
        MonomialBasis mults(ring, md);
        for (const Monomial& m : mults.monomials()) {
            MultiPoly mono(ring);
            mono.add_term(m, Rational(1));
            rows.append_row(basis.coords(mono * g));
        }
    }
    return Subspace<RationalField>::span(rows);
}

bool BinaryForm::is_zero() const {
    for (const auto& c : coeff)
        if (c != 0) return false;
    return true;
}

namespace {

// Univariate polynomials over Q as dense coefficient vectors, low degree.
using UPoly = std::vector<Rational>;

void utrim(UPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

UPoly uderiv(const UPoly& f) {
    UPoly d;
    for (std::size_t i = 1; i < f.size(); ++i) d.push_back(f[i] * static_cast<long>(i));
    utrim(d);
    return d;
}

UPoly urem(UPoly a, const UPoly& b) {
    utrim(a);
    while (a.size() >= b.size() && !a.empty()) {
        Rational q = a.back() / b.back();
        std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= q * b[i];
        utrim(a);
    }
    return a;
}

UPoly udiv(UPoly a, const UPoly& b) {
    utrim(a);
    UPoly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, Rational(0));
    while (a.size() >= b.size() && !a.empty()) {
        Rational c = a.back() / b.back();
        std::size_t shift = a.size() - b.size();
        q[shift] = c;
        for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= c * b[i];
        utrim(a);
    }
    return q;
}

UPoly ugcd(UPoly a, UPoly b) {
    utrim(a);
    utrim(b);
    while (!b.empty()) {
        UPoly r = urem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        Rational lead = a.back();
        for (auto& c : a) c /= lead;
    }
    return a;
}

// all multiplicities even <=> f = c * (gcd(f, f'))^2 * unit-structure; test by
// repeated extraction: f square iff its square-free part is constant after
// pairing, i.e. f / gcd(f,f')^? ... implemented via multiplicity parity walk.
bool upoly_all_even_multiplicities(UPoly f) {
    utrim(f);
    if (f.empty()) throw std::logic_error("zero polynomial");
    if (f.size() == 1) return true;  // nonzero constant
    if ((f.size() - 1) % 2 != 0) return false;
    // w = square-free part; f has all even multiplicities iff w^2 | f and
    // f / w^2 again has all even multiplicities... simpler: f square-free part
    // must divide g = gcd(f, f'), and recurse on f / w^2.
    UPoly g = ugcd(f, uderiv(f));
    UPoly w = udiv(f, g);  // square-free part (char 0: w is non-constant here)
    if (w.size() <= 1) throw std::logic_error("square-free part degenerated");
    // every root of f has multiplicity >= 2 iff w | g
    if (!urem(g, w).empty()) return false;
    // divide out one full square-free layer twice and recurse
    UPoly rest = udiv(udiv(f, w), w);
    return upoly_all_even_multiplicities(rest);
}

}  // namespace

bool binary_form_is_square(const BinaryForm& f) {
    if (f.is_zero()) throw std::invalid_argument("binary_form_is_square: zero form");
    // f = s^a * t^b * g(s,t) with g(s,0), g(0,t) nonzero; check a, b even and
    // the dehomogenization g(s,1) has all even multiplicities.
    std::size_t lo = 0;
    while (f.coeff[lo] == 0) ++lo;  // t-exponent of the s^lo term... lo = s-multiplicity
    std::size_t hi = f.coeff.size() - 1;
    while (f.coeff[hi] == 0) --hi;
    std::size_t t_mult = f.coeff.size() - 1 - hi;
    if (lo % 2 != 0 || t_mult % 2 != 0) return false;
    UPoly g(f.coeff.begin() + static_cast<long>(lo), f.coeff.begin() + static_cast<long>(hi) + 1);
    return upoly_all_even_multiplicities(g);
}

RestrictionResult restrict_to_curve(const MultiPoly& q, const std::vector<BinaryForm>& param) {
    if (param.size() != q.ring().nvars())
        throw std::invalid_argument("restrict_to_curve: parameterization arity");
    int pdeg = param.front().degree();
    for (const auto& b : param)
        if (b.degree() != pdeg)
            throw std::invalid_argument("restrict_to_curve: components of unequal degree");
    PolyRing st = PolyRing::make({"s", "t"});
    std::vector<MultiPoly> images;
    for (const auto& b : param) {
        MultiPoly img(st);
        for (int i = 0; i <= b.degree(); ++i) {
            if (b.coeff[i] == 0) continue;
            Monomial m;
            m.e[0] = static_cast<std::uint8_t>(i);
            m.e[1] = static_cast<std::uint8_t>(b.degree() - i);
            img.add_term(m, b.coeff[i]);
        }
        images.push_back(img);
    }
    MultiPoly r = q.substitute(images, st);
    int d = r.total_degree();
    RestrictionResult out;
    if (r.is_zero()) {
        out.status = RestrictionStatus::IdenticallyZero;
        return out;
    }
    out.form.coeff.assign(static_cast<std::size_t>(d) + 1, Rational(0));
    for (const auto& [m, c] : r.terms()) {
        if (m.e[0] + m.e[1] != d)
            throw std::invalid_argument("restrict_to_curve: input not homogeneous");
        out.form.coeff[m.e[0]] = c;
    }
    out.status = binary_form_is_square(out.form) ? RestrictionStatus::Square
                                                 : RestrictionStatus::NonSquare;
    return out;
}

std::string to_string(const Rational& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

std::string to_string(const MultiPoly& p) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : p.terms()) {
        Rational a = c;
        if (first) {
            if (a < 0) {
                os << "-";
                a = -a;
            }
        } else {
            os << (a < 0 ? " - " : " + ");
            if (a < 0) a = -a;
        }
        first = false;
        bool printed = false;
        if (a != 1) {
            os << a;
            printed = true;
        }
        for (std::size_t j = 0; j < p.ring().nvars(); ++j) {
            if (m.e[j] == 0) continue;
            if (printed) os << "*";
            os << p.ring().names[j];
            if (m.e[j] > 1) os << "^" << static_cast<int>(m.e[j]);
            printed = true;
        }
        if (!printed) os << a;  // the +-1 constant term
    }
    return os.str();
}

namespace {

struct Tokenizer {
    const std::string& s;
    std::size_t i = 0;
    void skip_ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool done() {
        skip_ws();
        return i >= s.size();
    }
    char peek() {
        skip_ws();
        return s[i];
    }
};

}  // namespace

MultiPoly parse_poly(const PolyRing& ring, const std::string& text) {
    MultiPoly result(ring);
    Tokenizer tk{text};
    bool first_term = true;
    while (!tk.done()) {
        int sign = 1;
        char c = tk.peek();
        if (c == '+' || c == '-') {
            sign = (c == '-') ? -1 : 1;
            ++tk.i;
        } else if (!first_term) {
            throw std::invalid_argument("parse_poly: expected '+' or '-' between terms");
        }
        first_term = false;
        Rational coef(sign);
        Monomial mono;
        bool any_factor = false;
        while (true) {
            if (tk.done()) break;
            char f = tk.peek();
            if (f == '+' || f == '-') break;
            if (f == '*') {
                ++tk.i;
                continue;
            }
            if (std::isdigit(static_cast<unsigned char>(f))) {
                std::size_t j = tk.i;
                while (j < tk.s.size() &&
                       (std::isdigit(static_cast<unsigned char>(tk.s[j])) || tk.s[j] == '/'))
                    ++j;
                coef *= Rational(tk.s.substr(tk.i, j - tk.i));
                coef.canonicalize();
                tk.i = j;
                any_factor = true;
                continue;
            }
            if (std::isalpha(static_cast<unsigned char>(f))) {
                std::size_t j = tk.i;
                while (j < tk.s.size() && (std::isalnum(static_cast<unsigned char>(tk.s[j])) ||
                                           tk.s[j] == '_'))
                    ++j;
                std::string name = tk.s.substr(tk.i, j - tk.i);
                int vi = ring.var_index(name);
                if (vi < 0) throw std::invalid_argument("parse_poly: unknown variable " + name);
                tk.i = j;
                int exp = 1;
                if (tk.i < tk.s.size() && tk.s[tk.i] == '^') {
                    ++tk.i;
                    std::size_t k = tk.i;
                    while (k < tk.s.size() && std::isdigit(static_cast<unsigned char>(tk.s[k]))) ++k;
                    exp = std::stoi(tk.s.substr(tk.i, k - tk.i));
                    tk.i = k;
                }
                mono.e[vi] = static_cast<std::uint8_t>(mono.e[vi] + exp);
                any_factor = true;
                continue;
            }
            throw std::invalid_argument(std::string("parse_poly: unexpected character '") + f +
                                        "'");
        }
        if (!any_factor) throw std::invalid_argument("parse_poly: empty term");
        result.add_term(mono, coef);
    }
    return result;
}

}  // namespace cyv
