#include "acyclica/field.hpp"

namespace acyclica {

bool is_prime(uint32_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (uint32_t d = 3; (uint64_t)d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

FieldSpec FieldSpec::Fp(uint32_t p) {
    if (!is_prime(p))
        throw parse_error("field characteristic must be prime, got " + std::to_string(p));
    return FieldSpec{Kind::prime, p};
}

FieldSpec FieldSpec::parse(const std::string& s) {
    if (s == "Q") return Q();
    if (s.rfind("Fp:", 0) == 0) {
        unsigned long p = 0;
        try {
            p = std::stoul(s.substr(3));
        } catch (const std::exception&) {
            throw parse_error("bad field spec: " + s);
        }
        if (p == 0 || p > 0x7fffffffUL) throw parse_error("bad field spec: " + s);
        return Fp((uint32_t)p);
    }
    throw parse_error("bad field spec: " + s);
}

std::string FieldSpec::str() const {
    return is_rational() ? "Q" : "Fp:" + std::to_string(p);
}

uint32_t fp_add(uint32_t a, uint32_t b, uint32_t p) {
    uint64_t s = (uint64_t)a + b;
    return s >= p ? (uint32_t)(s - p) : (uint32_t)s;
}

uint32_t fp_sub(uint32_t a, uint32_t b, uint32_t p) {
    return a >= b ? a - b : a + p - b;
}

uint32_t fp_mul(uint32_t a, uint32_t b, uint32_t p) {
    return (uint32_t)((uint64_t)a * b % p);
}

uint32_t fp_neg(uint32_t a, uint32_t p) { return a == 0 ? 0 : p - a; }

uint32_t fp_inv(uint32_t a, uint32_t p) {
    if (a == 0) throw std::domain_error("division by zero in Fp");
    int64_t t = 0, nt = 1, r = p, nr = a;
    while (nr != 0) {
        int64_t q = r / nr;
        int64_t tmp = t - q * nt;
        t = nt; nt = tmp;
        tmp = r - q * nr;
        r = nr; nr = tmp;
    }
    if (t < 0) t += p;
    return (uint32_t)t;
}

FieldScalar FieldScalar::zero(const FieldSpec& f) { return integer(f, 0); }
FieldScalar FieldScalar::one(const FieldSpec& f) { return integer(f, 1); }

FieldScalar FieldScalar::rational(mpq_class v) {
    FieldScalar s;
    s.field_ = FieldSpec::Q();
    v.canonicalize();
    s.q_ = std::move(v);
    return s;
}

FieldScalar FieldScalar::rational(long num, long den) {
    return rational(mpq_class(num, den));
}

FieldScalar FieldScalar::mod(uint32_t p, int64_t v) {
    FieldScalar s;
    s.field_ = FieldSpec::Fp(p);
    int64_t r = v % (int64_t)p;
    if (r < 0) r += p;
    s.r_ = (uint32_t)r;
    return s;
}

FieldScalar FieldScalar::integer(const FieldSpec& f, long n) {
    if (f.is_rational()) return rational(mpq_class(n));
    return mod(f.p, n);
}

bool FieldScalar::is_zero() const {
    return field_.is_rational() ? q_ == 0 : r_ == 0;
}

bool FieldScalar::is_one() const {
    return field_.is_rational() ? q_ == 1 : r_ == 1;
}

void FieldScalar::check_same(const FieldScalar& o) const {
    if (!(field_ == o.field_))
        throw field_mismatch_error("scalar fields differ: " + field_.str() + " vs " + o.field_.str());
}

FieldScalar FieldScalar::operator+(const FieldScalar& o) const {
    check_same(o);
    FieldScalar s;
    s.field_ = field_;
    if (field_.is_rational()) s.q_ = q_ + o.q_;
    else s.r_ = fp_add(r_, o.r_, field_.p);
    return s;
}

FieldScalar FieldScalar::operator-(const FieldScalar& o) const {
    check_same(o);
    FieldScalar s;
    s.field_ = field_;
    if (field_.is_rational()) s.q_ = q_ - o.q_;
    else s.r_ = fp_sub(r_, o.r_, field_.p);
    return s;
}

FieldScalar FieldScalar::operator*(const FieldScalar& o) const {
    check_same(o);
    FieldScalar s;
    s.field_ = field_;
    if (field_.is_rational()) s.q_ = q_ * o.q_;
    else s.r_ = fp_mul(r_, o.r_, field_.p);
    return s;
}

FieldScalar FieldScalar::operator-() const {
    FieldScalar s;
    s.field_ = field_;
    if (field_.is_rational()) s.q_ = -q_;
    else s.r_ = fp_neg(r_, field_.p);
    return s;
}

FieldScalar FieldScalar::inverse() const {
    FieldScalar s;
    s.field_ = field_;
    if (field_.is_rational()) {
        if (q_ == 0) throw std::domain_error("division by zero in Q");
        s.q_ = 1 / q_;
    } else {
        s.r_ = fp_inv(r_, field_.p);
    }
    return s;
}

bool FieldScalar::operator==(const FieldScalar& o) const {
    if (!(field_ == o.field_)) return false;
    return field_.is_rational() ? q_ == o.q_ : r_ == o.r_;
}

std::string FieldScalar::str() const {
    if (!field_.is_rational()) return std::to_string(r_);
    return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

FieldScalar FieldScalar::parse(const FieldSpec& f, const std::string& s) {
    try {
        if (f.is_rational()) {
            auto slash = s.find('/');
            mpz_class num(slash == std::string::npos ? s : s.substr(0, slash));
            mpz_class den(slash == std::string::npos ? std::string("1") : s.substr(slash + 1));
            if (den == 0) throw parse_error("zero denominator: " + s);
            return rational(mpq_class(num, den));
        }
        return mod(f.p, std::stoll(s));
    } catch (const std::invalid_argument&) {
        throw parse_error("bad scalar: " + s);
    }
}

const mpq_class& FieldScalar::rat() const {
    if (!field_.is_rational()) throw field_mismatch_error("not a rational scalar");
    return q_;
}

uint32_t FieldScalar::residue() const {
    if (field_.is_rational()) throw field_mismatch_error("not a prime-field scalar");
    return r_;
}

} // namespace acyclica
