#ifndef WEYLPAIN_EXACTPOLY_HPP
#define WEYLPAIN_EXACTPOLY_HPP

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "weylpain/error.hpp"

namespace weylpain {

using Rational = mpq_class;
using Integer = mpz_class;

Rational parse_rational(std::string_view s);
std::string format_rational(const Rational& r);

inline constexpr std::size_t kMaxVars = 20;

// Ordered variable names. Standard tables are q, p, t, a0..a{n-1}, then
// optional unknowns u0..u{k-1} used by ansatz Hamiltonians.
class VarTable {
 public:
  explicit VarTable(std::vector<std::string> names);

  static std::shared_ptr<const VarTable> standard(int alpha_count, int unknown_count = 0);

  std::size_t size() const { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<std::size_t> find(std::string_view name) const;
  std::size_t index(std::string_view name) const;  // throws UnknownIdentifier

  // Only meaningful on standard tables.
  int alpha_count() const { return alpha_count_; }
  int unknown_count() const { return unknown_count_; }
  bool is_standard() const { return standard_; }
  static constexpr std::size_t q = 0, p = 1, t = 2;
  std::size_t alpha(int i) const { return 3 + static_cast<std::size_t>(i); }
  std::size_t unknown(int k) const { return 3 + static_cast<std::size_t>(alpha_count_ + k); }

  bool operator==(const VarTable& o) const { return names_ == o.names_; }

 private:
  std::vector<std::string> names_;
  int alpha_count_ = 0;
  int unknown_count_ = 0;
  bool standard_ = false;
};

using VarTablePtr = std::shared_ptr<const VarTable>;

bool same_table(const VarTablePtr& a, const VarTablePtr& b);

struct Monomial {
  std::array<std::uint16_t, kMaxVars> e{};
  std::uint32_t deg = 0;

  std::uint16_t operator[](std::size_t i) const { return e[i]; }
  bool operator==(const Monomial& o) const { return deg == o.deg && e == o.e; }
  bool operator!=(const Monomial& o) const { return !(*this == o); }

  bool divides(const Monomial& o) const;
  static Monomial product(const Monomial& a, const Monomial& b);  // overflow-checked
  static Monomial quotient(const Monomial& a, const Monomial& b);  // requires b | a
  static Monomial unit(std::size_t var, unsigned power = 1);
  void set(std::size_t var, unsigned power);
};

// Graded lexicographic with variable 0 most significant.
struct GrlexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const {
    if (a.deg != b.deg) return a.deg > b.deg;
    return a.e > b.e;
  }
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept;
};

class Poly {
 public:
  struct Term {
    Monomial mono;
    Rational coef;
  };

  explicit Poly(VarTablePtr table) : table_(std::move(table)) {}
  Poly(VarTablePtr table, std::vector<Term> terms);  // sorts, merges, drops zeros

  static Poly constant(VarTablePtr table, const Rational& c);
  static Poly var(VarTablePtr table, std::size_t idx, unsigned power = 1);
  static Poly var(VarTablePtr table, std::string_view name);
  static Poly monomial(VarTablePtr table, const Monomial& m, const Rational& c);
  // Caller guarantees strictly decreasing grlex order and nonzero coefficients.
  static Poly from_canonical(VarTablePtr table, std::vector<Term> terms);

  const VarTablePtr& table() const { return table_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  bool is_monomial() const { return terms_.size() == 1; }
  Rational constant_term() const;
  const Term& leading() const { return terms_.front(); }

  int total_degree() const;
  int degree_in(std::size_t var) const;
  int degree_in(const std::vector<std::size_t>& vars) const;
  bool involves(std::size_t var) const;

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  Poly& operator*=(const Rational& c);

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
  friend Poly operator*(const Rational& c, Poly a) { return a *= c; }

  bool operator==(const Poly& o) const;
  bool operator!=(const Poly& o) const { return !(*this == o); }

 private:
  friend class PolyBuilder;
  VarTablePtr table_;
  std::vector<Term> terms_;
};

// Accumulates terms in any order, then emits a canonical Poly.
class PolyBuilder {
 public:
  explicit PolyBuilder(VarTablePtr table);
  ~PolyBuilder();
  PolyBuilder(const PolyBuilder&) = delete;
  PolyBuilder& operator=(const PolyBuilder&) = delete;

  void add(const Monomial& m, const Rational& c);
  void add_product(const Monomial& m, const Rational& a, const Rational& b);
  void add(const Poly& p);
  void add_scaled(const Poly& p, const Monomial& m, const Rational& c);
  Poly finish();

 private:
  struct Impl;
  VarTablePtr table_;
  std::unique_ptr<Impl> impl_;
};

Poly add(const Poly& a, const Poly& b);
Poly mul(const Poly& a, const Poly& b);
Poly pow(const Poly& a, unsigned n);
Poly derivative(const Poly& a, std::size_t var);
Poly derivative(const Poly& a, std::string_view var);

// Rewrites the polynomial over another table with the same variable names
// (missing variables must not occur).
Poly retable(const Poly& a, const VarTablePtr& target);

// Groups terms by their exponents in `vars`; coefficients carry the rest.
std::vector<std::pair<Monomial, Poly>> collect(const Poly& a, const std::vector<std::size_t>& vars);

// Keeps only terms whose exponent in `var` equals `power`, with that
// power removed.
Poly coefficient_of(const Poly& a, std::size_t var, unsigned power);

// Largest monomial dividing every term.
Monomial monomial_content(const Poly& a);
Poly divide_by_monomial(const Poly& a, const Monomial& m);  // requires m | every term

std::optional<Poly> divide_exact(const Poly& f, const Poly& g);

struct DivisionResult {
  Poly quotient;
  Poly remainder;
};
DivisionResult divide_with_remainder(const Poly& f, const Poly& g);

// Affine relation sum coeff[i]*alpha_i = constant.
struct LinearRelation {
  std::vector<Rational> coeff;
  Rational constant;
  int eliminated() const;  // highest index with nonzero coefficient
};

// Solves the relation for alpha_eliminated and substitutes it.
Poly reduce_mod_relation(const Poly& a, const LinearRelation& rel, int eliminated);
Poly reduce_mod_relation(const Poly& a, const LinearRelation& rel);

Poly parse_poly(std::string_view text, const VarTablePtr& table);
std::string format(const Poly& a);

// Dense assignment, one slot per variable; unset slots are left symbolic
// by partial_eval and rejected by eval_at.
using Point = std::vector<std::optional<Rational>>;
Point make_point(const VarTablePtr& table, const std::map<std::string, Rational>& values);

Rational eval_at(const Poly& a, const Point& point);
Rational eval_at(const Poly& a, const std::map<std::string, Rational>& point);
Poly partial_eval(const Poly& a, const Point& point);
double eval_double(const Poly& a, const std::vector<double>& point);

class RationalFunction {
 public:
  explicit RationalFunction(Poly num);
  RationalFunction(Poly num, Poly den);

  static RationalFunction constant(VarTablePtr table, const Rational& c);
  static RationalFunction var(VarTablePtr table, std::size_t idx);

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  const VarTablePtr& table() const { return num_.table(); }
  bool is_polynomial() const { return den_.is_constant(); }
  bool is_zero() const { return num_.is_zero(); }

  RationalFunction operator-() const;
  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);

 private:
  struct Raw {};
  RationalFunction(Raw, Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {}
  void normalize();
  Poly num_;
  Poly den_;
};

RationalFunction derivative(const RationalFunction& a, std::size_t var);
std::string format(const RationalFunction& a);
RationalFunction parse_rational_function(std::string_view num, std::string_view den,
                                         const VarTablePtr& table);

// Bindings by variable index. Unbound variables pass through.
using Bindings = std::map<std::size_t, RationalFunction>;

RationalFunction substitute(const Poly& a, const Bindings& b);
RationalFunction substitute(const RationalFunction& a, const Bindings& b);
RationalFunction substitute(const Poly& a, const std::map<std::string, RationalFunction>& b);

// Same as substitute but returns numerator and denominator without any
// cancellation attempt; denominator is the product of binding denominators
// raised to the degrees of `a`.
std::pair<Poly, Poly> substitute_parts(const Poly& a, const Bindings& b);

Rational eval_at(const RationalFunction& a, const Point& point);  // throws Pole
double eval_double(const RationalFunction& a, const std::vector<double>& point);

}  // namespace weylpain

#endif
