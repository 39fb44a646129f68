#include "plforge/scalar.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cstdlib>
#include <ostream>
#include <sstream>

namespace plforge {

namespace {

std::atomic<std::size_t>& cap_storage() {
    static std::atomic<std::size_t> cap = [] {
        std::size_t value = 64;
        if (const char* env = std::getenv("PLFORGE_DEGREE_CAP")) {
            char* end = nullptr;
            unsigned long parsed = std::strtoul(env, &end, 10);
            if (end != env && parsed > 0) value = parsed;
        }
        return value;
    }();
    return cap;
}

Backend join_backend(Backend a, Backend b) {
    return (a == Backend::Epsilon || b == Backend::Epsilon) ? Backend::Epsilon : Backend::Rational;
}

}  // namespace

std::size_t degree_cap() { return cap_storage().load(); }
void set_degree_cap(std::size_t cap) { cap_storage().store(cap); }

namespace poly {

void trim(Poly& p) {
    while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

Poly add(const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    trim(r);
    return r;
}

Poly sub(const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    trim(r);
    return r;
}

Poly mul(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (sgn(a[i]) == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    trim(r);
    return r;
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
    if (b.empty()) throw Error(ErrorCode::DivisionByZero, "polynomial division by zero");
    Poly rem = a;
    if (rem.size() < b.size()) return {{}, rem};
    Poly quo(rem.size() - b.size() + 1);
    const mpq_class& lead = b.back();
    while (!rem.empty() && rem.size() >= b.size()) {
        std::size_t shift = rem.size() - b.size();
        mpq_class c = rem.back() / lead;
        quo[shift] = c;
        for (std::size_t j = 0; j < b.size(); ++j) rem[shift + j] -= c * b[j];
        rem.pop_back();
        trim(rem);
    }
    trim(quo);
    return {quo, rem};
}

Poly gcd(Poly a, Poly b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        mpq_class lead = a.back();
        for (auto& c : a) c /= lead;
    }
    return a;
}

std::string str(const Poly& p) {
    if (p.empty()) return "0";
    std::string out;
    bool first = true;
    for (std::size_t k = 0; k < p.size(); ++k) {
        if (sgn(p[k]) == 0) continue;
        mpq_class c = p[k];
        if (sgn(c) < 0) {
            out += "-";
            c = -c;
        } else if (!first) {
            out += "+";
        }
        out += c.get_str();
        if (k == 1) out += "*e";
        if (k > 1) out += "*e^" + std::to_string(k);
        first = false;
    }
    return out;
}

}  // namespace poly

Scalar::Scalar(const mpq_class& q, Backend b) : backend_(b), num_{q} {
    num_[0].canonicalize();
    canonical_zero();
}

void Scalar::canonical_zero() {
    if (!num_.empty() && num_.size() == 1 && sgn(num_[0]) == 0) num_.clear();
}

Scalar Scalar::epsilon() { return from_polys({mpq_class(0), mpq_class(1)}, {mpq_class(1)}); }

Scalar Scalar::from_polys(Poly num, Poly den) {
    Scalar s;
    s.backend_ = Backend::Epsilon;
    s.num_ = std::move(num);
    s.den_ = std::move(den);
    for (auto& c : s.num_) c.canonicalize();
    for (auto& c : s.den_) c.canonicalize();
    poly::trim(s.num_);
    poly::trim(s.den_);
    if (s.den_.empty()) throw Error(ErrorCode::DivisionByZero, "zero denominator");
    s.normalize();
    return s;
}

void Scalar::normalize() {
    poly::trim(num_);
    if (num_.empty()) {
        den_ = {mpq_class(1)};
        return;
    }
    if (den_.size() > 1) {
        Poly g = poly::gcd(num_, den_);
        if (g.size() > 1) {
            num_ = poly::divmod(num_, g).first;
            den_ = poly::divmod(den_, g).first;
        }
    }
    auto low = std::find_if(den_.begin(), den_.end(), [](const mpq_class& c) { return sgn(c) != 0; });
    mpq_class scale = *low;
    if (scale != 1) {
        for (auto& c : num_) c /= scale;
        for (auto& c : den_) c /= scale;
    }
    std::size_t cap = degree_cap();
    if (num_.size() > cap + 1 || den_.size() > cap + 1) {
        throw Error(ErrorCode::DegreeOverflow,
                    "degree exceeds cap " + std::to_string(cap) + " (set PLFORGE_DEGREE_CAP)");
    }
}

mpq_class Scalar::rational_value() const {
    if (!is_rational_value()) throw Error(ErrorCode::FieldMismatch, "value " + str() + " is not rational");
    return num_.empty() ? mpq_class(0) : num_[0] / den_[0];
}

Scalar Scalar::with_backend(Backend b) const {
    if (b == Backend::Rational && !is_rational_value()) {
        throw Error(ErrorCode::FieldMismatch, "value " + str() + " is not rational");
    }
    Scalar s = *this;
    s.backend_ = b;
    return s;
}

int Scalar::sign() const {
    if (num_.empty()) return 0;
    auto low = std::find_if(num_.begin(), num_.end(), [](const mpq_class& c) { return sgn(c) != 0; });
    // Denominator is normalized to lowest nonzero coefficient 1.
    return sgn(*low);
}

int Scalar::compare(const Scalar& a, const Scalar& b) {
    if (a.is_plain_rational() && b.is_plain_rational()) {
        const mpq_class zero(0);
        const mpq_class& x = a.num_.empty() ? zero : a.num_[0];
        const mpq_class& y = b.num_.empty() ? zero : b.num_[0];
        int c = cmp(x, y);
        return c < 0 ? -1 : (c > 0 ? 1 : 0);
    }
    return (a - b).sign();
}

Scalar Scalar::operator-() const {
    Scalar s = *this;
    for (auto& c : s.num_) c = -c;
    return s;
}

Scalar& Scalar::operator+=(const Scalar& o) {
    backend_ = join_backend(backend_, o.backend_);
    if (is_plain_rational() && o.is_plain_rational()) {
        if (o.num_.empty()) return *this;
        if (num_.empty()) {
            num_ = o.num_;
            return *this;
        }
        num_[0] += o.num_[0];
        canonical_zero();
        return *this;
    }
    if (den_ == o.den_) {
        num_ = poly::add(num_, o.num_);
        if (den_.size() > 1) normalize();
        else poly::trim(num_);
        return *this;
    }
    num_ = poly::add(poly::mul(num_, o.den_), poly::mul(o.num_, den_));
    den_ = poly::mul(den_, o.den_);
    normalize();
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) { return *this += -o; }

Scalar& Scalar::operator*=(const Scalar& o) {
    backend_ = join_backend(backend_, o.backend_);
    if (is_plain_rational() && o.is_plain_rational()) {
        if (num_.empty()) return *this;
        if (o.num_.empty()) {
            num_.clear();
            return *this;
        }
        num_[0] *= o.num_[0];
        return *this;
    }
    num_ = poly::mul(num_, o.num_);
    den_ = poly::mul(den_, o.den_);
    if (den_.size() > 1) {
        normalize();
    } else {
        poly::trim(num_);
        if (num_.empty()) den_ = {mpq_class(1)};
        if (num_.size() > degree_cap() + 1) normalize();
    }
    return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
    if (o.is_zero()) throw Error(ErrorCode::DivisionByZero, "division by zero");
    backend_ = join_backend(backend_, o.backend_);
    if (is_plain_rational() && o.is_plain_rational()) {
        if (!num_.empty()) num_[0] /= o.num_[0];
        return *this;
    }
    num_ = poly::mul(num_, o.den_);
    den_ = poly::mul(den_, o.num_);
    normalize();
    return *this;
}

std::string Scalar::str() const {
    if (den_.size() == 1 && den_[0] == 1) return poly::str(num_);
    return "(" + poly::str(num_) + ")/(" + poly::str(den_) + ")";
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

Scalar arith(const Scalar& a, const Scalar& b, ArithOp op) {
    if (a.backend() != b.backend()) throw Error(ErrorCode::MixedBackend, "operands use different backends");
    switch (op) {
        case ArithOp::Add: return a + b;
        case ArithOp::Sub: return a - b;
        case ArithOp::Mul: return a * b;
        case ArithOp::Div: return a / b;
    }
    return a;
}

int sign(const Scalar& a) { return a.sign(); }

std::optional<mpq_class> standard_part(const Scalar& a) {
    const Poly& den = a.denominator();
    if (sgn(den[0]) == 0) return std::nullopt;
    if (a.numerator().empty()) return mpq_class(0);
    mpq_class r = a.numerator()[0] / den[0];
    return r;
}

// ---- parsing ---------------------------------------------------------------

namespace {

class ScalarParser {
  public:
    explicit ScalarParser(std::string_view s) : s_(s) {}

    Scalar parse() {
        skip();
        Scalar value;
        if (peek() == '(') {
            ++pos_;
            Poly num = parse_poly();
            expect(')');
            skip();
            if (at_end()) {
                value = Scalar::from_polys(num, {mpq_class(1)});
            } else {
                expect('/');
                skip();
                expect('(');
                Poly den = parse_poly();
                expect(')');
                value = Scalar::from_polys(num, den);
            }
        } else {
            value = Scalar::from_polys(parse_poly(), {mpq_class(1)});
        }
        skip();
        if (!at_end()) fail("trailing characters");
        return value;
    }

  private:
    Poly parse_poly() {
        Poly p;
        skip();
        bool first = true;
        while (true) {
            skip();
            int sgn_term = 1;
            if (peek() == '+' || peek() == '-') {
                sgn_term = peek() == '-' ? -1 : 1;
                ++pos_;
                skip();
            } else if (!first) {
                break;
            }
            auto [coef, deg] = parse_term();
            if (p.size() <= deg) p.resize(deg + 1);
            p[deg] += sgn_term * coef;
            first = false;
        }
        poly::trim(p);
        return p;
    }

    std::pair<mpq_class, std::size_t> parse_term() {
        mpq_class coef(1);
        bool have_coef = false;
        if (std::isdigit(static_cast<unsigned char>(peek()))) {
            coef = parse_rational();
            have_coef = true;
            skip();
            if (peek() != '*') return {coef, 0};
            ++pos_;
            skip();
        }
        if (peek() != 'e') {
            if (have_coef) fail("expected 'e' after '*'");
            fail("expected a coefficient or 'e'");
        }
        ++pos_;
        skip();
        std::size_t deg = 1;
        if (peek() == '^') {
            ++pos_;
            skip();
            std::size_t start = pos_;
            while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
            if (start == pos_) fail("expected exponent");
            deg = std::stoul(std::string(s_.substr(start, pos_ - start)));
        }
        return {coef, deg};
    }

    mpq_class parse_rational() {
        std::size_t start = pos_;
        while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        std::string text(s_.substr(start, pos_ - start));
        // "p/q" is a coefficient only when a digit follows the slash.
        if (peek() == '/' && pos_ + 1 < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_ + 1]))) {
            ++pos_;
            std::size_t dstart = pos_;
            while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
            text += "/" + std::string(s_.substr(dstart, pos_ - dstart));
        }
        mpq_class q;
        if (q.set_str(text, 10) != 0) fail("bad rational '" + text + "'");
        if (q.get_den() == 0) throw Error(ErrorCode::DivisionByZero, "zero denominator in '" + text + "'");
        q.canonicalize();
        return q;
    }

    void expect(char c) {
        skip();
        if (peek() != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
    bool at_end() const { return pos_ >= s_.size(); }
    [[noreturn]] void fail(const std::string& msg) const {
        throw Error(ErrorCode::SyntaxError, "scalar '" + std::string(s_) + "': " + msg);
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

}  // namespace

Scalar Scalar::parse(std::string_view text, Backend backend) {
    Scalar v = ScalarParser(text).parse();
    if (backend == Backend::Rational) {
        if (!v.is_rational_value()) {
            throw Error(ErrorCode::FieldMismatch, "scalar '" + std::string(text) + "' is not in Q");
        }
        return Scalar(v.rational_value(), Backend::Rational);
    }
    return v.with_backend(Backend::Epsilon);
}

}  // namespace plforge
