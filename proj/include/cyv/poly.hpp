#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cyv/fp.hpp"
#include "cyv/linalg.hpp"
#include "cyv/rational.hpp"

namespace cyv {

constexpr std::size_t kMaxVars = 8;

// Variable set with positive integer weights (weight 1 unless stated).
struct PolyRing {
    std::vector<std::string> names;
    std::vector<int> weights;

    static PolyRing make(std::vector<std::string> names, std::vector<int> weights = {});
    std::size_t nvars() const { return names.size(); }
    int var_index(const std::string& name) const;  // -1 if absent
};

bool operator==(const PolyRing& a, const PolyRing& b);

// Exponent tuple. Total degrees in this project stay below 2^8; the
// constructor asserts that bound rather than guarding arithmetic.
struct Monomial {
    std::array<std::uint8_t, kMaxVars> e{};

    bool operator<(const Monomial& o) const { return e < o.e; }
    bool operator==(const Monomial& o) const { return e == o.e; }
    int total_degree(std::size_t nvars) const;
    int weighted_degree(const PolyRing& ring) const;
};

// Sparse multivariate polynomial over Q. Immutable value semantics; no zero
// coefficients are ever stored.
class MultiPoly {
  public:
    explicit MultiPoly(PolyRing ring) : ring_(std::move(ring)) {}
    static MultiPoly zero(const PolyRing& ring) { return MultiPoly(ring); }
    static MultiPoly constant(const PolyRing& ring, const Rational& c);
    static MultiPoly variable(const PolyRing& ring, std::size_t j, int exp = 1);

    const PolyRing& ring() const { return ring_; }
    const std::map<Monomial, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    Rational coeff(const Monomial& m) const;

    MultiPoly operator+(const MultiPoly& o) const;
    MultiPoly operator-(const MultiPoly& o) const;
    MultiPoly operator*(const MultiPoly& o) const;
    MultiPoly operator-() const;
    MultiPoly scale(const Rational& c) const;
    MultiPoly pow(unsigned n) const;
    bool operator==(const MultiPoly& o) const { return terms_ == o.terms_; }

    MultiPoly derivative(std::size_t j) const;

    // Substitute each variable by images[j] (a polynomial in the target ring).
    MultiPoly substitute(const std::vector<MultiPoly>& images, const PolyRing& target) const;
    // Linear change of coordinates: var_j -> sum_k M[j][k] * var_k, same ring.
    MultiPoly substitute_linear(const std::vector<std::vector<Rational>>& M) const;

    Rational eval(const std::vector<Rational>& point) const;
    std::uint32_t eval_mod(const PrimeField& f, const std::vector<std::uint32_t>& point) const;

    int total_degree() const;                 // -1 for the zero polynomial
    std::optional<int> homogeneous_weighted_degree() const;  // nullopt if mixed

    void add_term(const Monomial& m, const Rational& c);  // builder

  private:
    PolyRing ring_;
    std::map<Monomial, Rational> terms_;
};

// Rewrite rule v^2 -> rhs for a designated variable; used for the quadric
// ideals (Y_i^2 -> Q_i(X), u_i^2 -> x-differences). Normal form has degree
// <= 1 in each rewritten variable.
struct SquareRelation {
    std::size_t var;
    MultiPoly rhs;
};

MultiPoly reduce_square_relations(MultiPoly p, const std::vector<SquareRelation>& rels);

// Exponent tuples of fixed weighted degree, lexicographically ordered
// (largest first on exponent tuples, matching the graded-piece conventions).
class MonomialBasis {
  public:
    MonomialBasis(const PolyRing& ring, int degree);
    std::size_t size() const { return monos_.size(); }
    const std::vector<Monomial>& monomials() const { return monos_; }
    std::size_t index_of(const Monomial& m) const;  // throws if absent
    // Coefficient vector of p (must be homogeneous of the basis degree).
    std::vector<Rational> coords(const MultiPoly& p) const;

  private:
    PolyRing ring_;
    int degree_;
    std::vector<Monomial> monos_;
    std::map<Monomial, std::size_t> index_;
};

// Span of {m * g : g in generators, m monomial, deg(m*g) = degree} inside the
// degree-d monomial basis.
Subspace<RationalField> graded_piece(const RationalField& QQ,
                                     const std::vector<MultiPoly>& generators, int degree,
                                     const MonomialBasis& basis);

// Binary forms in (s, t), coefficients indexed by s-exponent.
struct BinaryForm {
    std::vector<Rational> coeff;  // coeff[i] * s^i * t^(d-i)
    int degree() const { return static_cast<int>(coeff.size()) - 1; }
    bool is_zero() const;
};

enum class RestrictionStatus { NonSquare, Square, IdenticallyZero };

struct RestrictionResult {
    BinaryForm form;
    RestrictionStatus status;
};

// Substitute a P^1-parameterization (equal-degree binary forms, one per
// variable) into q and decide squareness by exact square-free decomposition.
RestrictionResult restrict_to_curve(const MultiPoly& q, const std::vector<BinaryForm>& param);

// Square-free-decomposition predicate: every irreducible factor of the binary
// form appears with even multiplicity.
bool binary_form_is_square(const BinaryForm& f);

std::string to_string(const MultiPoly& p);
MultiPoly parse_poly(const PolyRing& ring, const std::string& text);

}  // namespace cyv
