#ifndef ACYCLICA_FIELD_HPP
#define ACYCLICA_FIELD_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace acyclica {

struct field_mismatch_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct parse_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Ground field of a computation: the rationals or a prime field Fp.
struct FieldSpec {
    enum class Kind : uint8_t { rational, prime };

    Kind kind = Kind::rational;
    uint32_t p = 0;

    static FieldSpec Q() { return FieldSpec{Kind::rational, 0}; }
    static FieldSpec Fp(uint32_t p);

    // "Q" or "Fp:<p>"
    static FieldSpec parse(const std::string& s);
    std::string str() const;

    bool is_rational() const { return kind == Kind::rational; }
    bool operator==(const FieldSpec&) const = default;
};

bool is_prime(uint32_t n);

uint32_t fp_add(uint32_t a, uint32_t b, uint32_t p);
uint32_t fp_sub(uint32_t a, uint32_t b, uint32_t p);
uint32_t fp_mul(uint32_t a, uint32_t b, uint32_t p);
uint32_t fp_neg(uint32_t a, uint32_t p);
uint32_t fp_inv(uint32_t a, uint32_t p);

/// Exact scalar in the field fixed by its FieldSpec.  Rationals are kept
/// reduced with positive denominator; prime-field residues lie in [0, p).
class FieldScalar {
public:
    FieldScalar() : field_(FieldSpec::Q()), q_(0) {}

    static FieldScalar zero(const FieldSpec& f);
    static FieldScalar one(const FieldSpec& f);
    static FieldScalar rational(mpq_class v);
    static FieldScalar rational(long num, long den);
    static FieldScalar mod(uint32_t p, int64_t v);
    /// Integer n interpreted in the given field.
    static FieldScalar integer(const FieldSpec& f, long n);

    const FieldSpec& field() const { return field_; }
    bool is_zero() const;
    bool is_one() const;

    FieldScalar operator+(const FieldScalar& o) const;
    FieldScalar operator-(const FieldScalar& o) const;
    FieldScalar operator*(const FieldScalar& o) const;
    FieldScalar operator-() const;
    FieldScalar inverse() const;

    bool operator==(const FieldScalar& o) const;
    bool operator!=(const FieldScalar& o) const { return !(*this == o); }

    /// Canonical text form: "num/den" over Q, decimal residue over Fp.
    std::string str() const;
    static FieldScalar parse(const FieldSpec& f, const std::string& s);

    const mpq_class& rat() const;
    uint32_t residue() const;

private:
    FieldSpec field_;
    mpq_class q_;
    uint32_t r_ = 0;

    void check_same(const FieldScalar& o) const;
};

} // namespace acyclica

#endif
