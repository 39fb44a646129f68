#pragma once

// Exact ordered-field scalars: the rationals Q and the rational function
// field Q(e), ordered so that e is a positive infinitesimal.

#include <gmpxx.h>

#include <Eigen/Core>

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "plforge/error.hpp"

namespace plforge {

enum class Backend { Rational, Epsilon };

/// Polynomial in e with rational coefficients, ascending degree, no trailing zeros.
using Poly = std::vector<mpq_class>;

/// Maximum degree allowed for numerator or denominator of a Q(e) value.
/// Defaults to 64, or to PLFORGE_DEGREE_CAP when that variable is set.
std::size_t degree_cap();
void set_degree_cap(std::size_t cap);

class Scalar {
  public:
    Scalar() = default;
    Scalar(long v) : num_{mpq_class(v)} { canonical_zero(); }  // NOLINT: implicit literal
    Scalar(const mpq_class& q, Backend b = Backend::Rational);

    /// The infinitesimal e (Epsilon backend).
    static Scalar epsilon();
    /// num/den in Q(e); normalized eagerly.
    static Scalar from_polys(Poly num, Poly den);
    static Scalar parse(std::string_view text, Backend backend);

    Backend backend() const { return backend_; }
    /// Value lies in Q (constant rational function), whatever the backend.
    bool is_rational_value() const { return den_.size() == 1 && num_.size() <= 1; }
    /// Throws FieldMismatch if the value is not in Q.
    mpq_class rational_value() const;
    /// Reinterpret in another backend; Epsilon -> Rational requires a rational value.
    Scalar with_backend(Backend b) const;

    const Poly& numerator() const { return num_; }
    const Poly& denominator() const { return den_; }

    int sign() const;
    bool is_zero() const { return num_.empty(); }

    Scalar operator-() const;
    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    Scalar& operator/=(const Scalar& o);

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

    /// Value equality; the backend tag does not take part.
    friend bool operator==(const Scalar& a, const Scalar& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }
    friend bool operator<(const Scalar& a, const Scalar& b) { return compare(a, b) < 0; }
    friend bool operator>(const Scalar& a, const Scalar& b) { return compare(a, b) > 0; }
    friend bool operator<=(const Scalar& a, const Scalar& b) { return compare(a, b) <= 0; }
    friend bool operator>=(const Scalar& a, const Scalar& b) { return compare(a, b) >= 0; }
    static int compare(const Scalar& a, const Scalar& b);

    std::string str() const;

  private:
    void canonical_zero();
    void normalize();
    bool is_plain_rational() const { return den_.size() == 1 && num_.size() <= 1; }

    Backend backend_ = Backend::Rational;
    Poly num_;          // empty == 0
    Poly den_{mpq_class(1)};
};

enum class ArithOp { Add, Sub, Mul, Div };

/// Strict field operation: both operands must share a backend.
Scalar arith(const Scalar& a, const Scalar& b, ArithOp op);
int sign(const Scalar& a);
/// Rational constant term of the e-expansion; nullopt when the value is infinite.
std::optional<mpq_class> standard_part(const Scalar& a);

inline Scalar abs(const Scalar& a) { return a.sign() < 0 ? -a : a; }

std::ostream& operator<<(std::ostream& os, const Scalar& s);

namespace poly {
void trim(Poly& p);
Poly add(const Poly& a, const Poly& b);
Poly sub(const Poly& a, const Poly& b);
Poly mul(const Poly& a, const Poly& b);
/// Quotient and remainder; divisor must be nonzero.
std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
/// Monic greatest common divisor (empty when both are zero).
Poly gcd(Poly a, Poly b);
std::string str(const Poly& p);
}  // namespace poly

}  // namespace plforge

namespace Eigen {
template <>
struct NumTraits<plforge::Scalar> {
    using Real = plforge::Scalar;
    using NonInteger = plforge::Scalar;
    using Nested = plforge::Scalar;
    using Literal = plforge::Scalar;
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 20,
        AddCost = 100,
        MulCost = 200
    };
    static Real epsilon() { return Real(0); }
    static Real dummy_precision() { return Real(0); }
    static int digits10() { return 0; }
};
}  // namespace Eigen
