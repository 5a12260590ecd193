#pragma once

#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "tmpow/ball.hpp"
#include "tmpow/polynomial.hpp"
#include "tmpow/root_isolation.hpp"

namespace tmpow {

enum class FieldClass { RationalInteger, Pisot, Salem, Other };

const char* to_string(FieldClass c);

struct FieldBudgets {
    mpfr_prec_t start_prec = 128;
    mpfr_prec_t prec_ceiling = 1 << 20;   // bits
    int max_degree = 24;
};

// Rejected input (reducible polynomial, no real root > 1, non-monic, ...).
class field_error : public std::invalid_argument {
public:
    explicit field_error(const std::string& what) : std::invalid_argument(what) {}
};

// A real algebraic beta > 1 presented by its monic integer minimal
// polynomial, with certified isolated conjugate roots and an exact
// Pisot / Salem / rational-integer classification.
//
// Immutable after construction; the lazily refined root cache is guarded by
// a mutex, so const methods are safe to call concurrently.
class NumberField {
public:
    // coeffs: constant term first, leading coefficient last (must be 1).
    // Verifies irreducibility over Q (the found factor is reported in the
    // error message otherwise), isolates roots, classifies.
    explicit NumberField(std::vector<mpz_class> coeffs, FieldBudgets budgets = {});

    const ZPoly& min_poly() const { return poly_; }
    int degree() const { return poly_.degree(); }
    FieldClass classification() const { return class_; }
    const FieldBudgets& budgets() const { return budgets_; }

    // Roots are sorted: descending center real part, ties by ascending
    // |imag center|, conjugate with positive imaginary part first.
    size_t beta_index() const { return beta_index_; }
    size_t num_roots() const { return static_cast<size_t>(degree()); }

    // Certified enclosures, refined on demand so that the disk radius is
    // at most 2^-prec.
    CBall root(size_t index, mpfr_prec_t prec) const;
    Ball beta(mpfr_prec_t prec) const;   // real enclosure of the distinguished root

    // Exact isolating rational interval for beta (lo, hi), hi - lo <= 2^-min_width.
    std::pair<mpq_class, mpq_class> beta_interval(long min_width_bits) const;

    // beta > sqrt(golden ratio), decided exactly: the equality case is the
    // minimal polynomial x^4 - x^2 - 1 itself (reported false); otherwise
    // the sign of beta^4 - beta^2 - 1 is certified by ball refinement.
    bool threshold_check() const;

    std::string describe() const;

private:
    void classify();
    void prove_irreducible_or_throw();
    void sort_roots_and_find_beta();
    void ensure_roots(mpfr_prec_t prec) const;

    ZPoly poly_;
    FieldBudgets budgets_;
    FieldClass class_ = FieldClass::Other;
    size_t beta_index_ = 0;
    int circle_roots_ = 0;           // certified count of roots on |z| = 1

    mutable std::mutex mu_;
    mutable RootDisks roots_;        // sorted configuration at roots_.prec
    mutable mpq_class beta_lo_, beta_hi_;   // exact isolating interval
};

// An element of Z[beta] as integer coordinates in the power basis
// 1, beta, ..., beta^(d-1). The field must outlive its elements.
class FieldElement {
public:
    FieldElement() : field_(nullptr) {}
    FieldElement(const NumberField& field, std::vector<mpz_class> coords);
    static FieldElement zero(const NumberField& field);
    static FieldElement one(const NumberField& field);
    static FieldElement beta(const NumberField& field);
    static FieldElement from_int(const NumberField& field, const mpz_class& v);

    const NumberField& field() const { return *field_; }
    const std::vector<mpz_class>& coords() const { return coords_; }
    bool is_zero() const;

    FieldElement operator+(const FieldElement& o) const;
    FieldElement operator-(const FieldElement& o) const;
    FieldElement operator*(const FieldElement& o) const;
    FieldElement operator-() const;
    bool operator==(const FieldElement& o) const;

    FieldElement mul_int(const mpz_class& v) const;

    // Certified enclosure of the image under the embedding sending beta to
    // the root of the given index. Radius <= 2^-prec * max(1, |center|).
    CBall embed(size_t root_index, mpfr_prec_t prec) const;
    Ball embed_beta(mpfr_prec_t prec) const;

    // Exact field norm: the resultant of the minimal polynomial and the
    // coordinate polynomial; equals the product of the element over all
    // embeddings, sign included.
    mpz_class norm() const;

    // Sum of |coordinate| (used in explicit constant bounds).
    mpz_class coord_l1() const;

    std::string str() const;

private:
    void check_same_field(const FieldElement& o) const;
    const NumberField* field_;
    std::vector<mpz_class> coords_;
};

} // namespace tmpow
