#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "coex/error.hpp"

namespace coex {

/**
 * Ordered abelian group carriers with decidable positivity.
 *
 * Two carrier families are supported:
 *  - integer vectors, ordered coordinatewise or by a finitely generated
 *    positive cone with a strictly positive functional (which makes cone
 *    membership decidable via a bounded coefficient search);
 *  - finite-dimensional Hermitian matrices under the Loewner order, with
 *    positivity decided by the minimum eigenvalue against a tolerance.
 *
 * Integer arithmetic is overflow-checked; wraparound throws OverflowError.
 */

using Int = std::int64_t;

Int checked_add(Int a, Int b);
Int checked_sub(Int a, Int b);
Int checked_mul(Int a, Int b);
Int checked_neg(Int a);

// ---------------------------------------------------------------------------
// Integer-vector carrier

struct IntVector {
    std::vector<Int> entries;

    IntVector() = default;
    explicit IntVector(std::vector<Int> e) : entries(std::move(e)) {}

    int dimension() const { return static_cast<int>(entries.size()); }
    bool is_zero() const;

    bool operator==(const IntVector&) const = default;
    // lexicographic; used only for deterministic ordering of element lists
    bool operator<(const IntVector& o) const { return entries < o.entries; }
};

IntVector iv_add(const IntVector& x, const IntVector& y);
IntVector iv_sub(const IntVector& x, const IntVector& y);
IntVector iv_neg(const IntVector& x);
IntVector iv_scale(Int k, const IntVector& x);
Int iv_dot(const IntVector& f, const IntVector& x);

/// A finitely generated positive cone. The functional f must be strictly
/// positive on every generator; this is what bounds the membership search.
class ConeSpec {
public:
    /// Uses the all-ones functional.
    explicit ConeSpec(std::vector<IntVector> generators);
    ConeSpec(std::vector<IntVector> generators, IntVector functional);

    const std::vector<IntVector>& generators() const { return generators_; }
    const IntVector& functional() const { return functional_; }
    int dimension() const { return generators_.front().dimension(); }

    /// True iff x is a nonnegative integer combination of the generators.
    /// Every coefficient is bounded by f(x)/min_j f(g_j), so a depth-first
    /// search over coefficient vectors within that bound is exhaustive.
    bool contains(const IntVector& x) const;

    bool operator==(const ConeSpec&) const = default;

private:
    bool search(const IntVector& remainder, std::size_t gen_index) const;

    std::vector<IntVector> generators_;
    IntVector functional_;
    std::vector<Int> gen_functional_values_;
};

struct IntVectorGroup {
    int dimension = 0;
    std::optional<ConeSpec> cone;  // empty: coordinatewise order

    static IntVectorGroup coordinatewise(int dimension);
    static IntVectorGroup with_cone(ConeSpec cone);

    bool operator==(const IntVectorGroup&) const = default;
};

// ---------------------------------------------------------------------------
// Hermitian carrier

using Complex = std::complex<double>;

/// Hermitian symmetry is checked against a tolerance at construction and the
/// stored entries are then symmetrized, so A == A^dagger holds exactly.
struct HermitianMatrix {
    int dimension = 0;
    std::vector<Complex> entries;  // row-major, dimension x dimension

    HermitianMatrix() = default;

    static HermitianMatrix make(int dimension, std::vector<Complex> entries,
                                double symmetry_tol = 1e-9);
    static HermitianMatrix zero(int dimension);
    static HermitianMatrix identity(int dimension);
    static HermitianMatrix diagonal(const std::vector<double>& diag);

    const Complex& at(int i, int j) const { return entries[static_cast<std::size_t>(i) * dimension + j]; }
    Complex& at(int i, int j) { return entries[static_cast<std::size_t>(i) * dimension + j]; }

    bool operator==(const HermitianMatrix&) const = default;
};

HermitianMatrix hm_add(const HermitianMatrix& x, const HermitianMatrix& y);
HermitianMatrix hm_sub(const HermitianMatrix& x, const HermitianMatrix& y);
HermitianMatrix hm_neg(const HermitianMatrix& x);
HermitianMatrix hm_scale(Int k, const HermitianMatrix& x);

/// Raw (not necessarily Hermitian) product, row-major.
std::vector<Complex> hm_raw_product(const HermitianMatrix& x, const HermitianMatrix& y);

/// max_ij |(xy - yx)_ij|
double commutator_max_norm(const HermitianMatrix& x, const HermitianMatrix& y);

/// Product of two (assumed commuting) Hermitian matrices, re-symmetrized;
/// throws if the result is farther than symmetry_tol from Hermitian.
HermitianMatrix hm_product(const HermitianMatrix& x, const HermitianMatrix& y,
                           double symmetry_tol = 1e-9);

/// max_ij |x_ij - y_ij|
double hm_max_abs_diff(const HermitianMatrix& x, const HermitianMatrix& y);

/// All eigenvalues, ascending. Stable symmetric solver.
std::vector<double> hermitian_eigenvalues(const HermitianMatrix& x);
double min_eigenvalue(const HermitianMatrix& x);
double max_eigenvalue(const HermitianMatrix& x);

struct HermitianGroup {
    int dimension = 0;
    double psd_tolerance = 1e-9;  // eigenvalue cutoff for positivity
    double eq_tolerance = 1e-9;   // entrywise equality; defaults to psd_tolerance

    static HermitianGroup make(int dimension, double psd_tolerance = 1e-9,
                               std::optional<double> eq_tolerance = std::nullopt);

    bool operator==(const HermitianGroup&) const = default;
};

// ---------------------------------------------------------------------------
// Carrier-generic layer

using GroupElement = std::variant<IntVector, HermitianMatrix>;

enum class GroupKind { IntCoordinatewise, IntCone, Hermitian };

struct Group {
    std::variant<IntVectorGroup, HermitianGroup> carrier;

    GroupKind kind() const;
    int dimension() const;
    bool is_integer() const { return std::holds_alternative<IntVectorGroup>(carrier); }

    const IntVectorGroup& int_group() const { return std::get<IntVectorGroup>(carrier); }
    const HermitianGroup& hermitian_group() const { return std::get<HermitianGroup>(carrier); }

    bool operator==(const Group&) const = default;
};

std::string kind_name(GroupKind kind);

/// Checks that x belongs to the carrier of g (kind and dimension).
bool element_in_group(const Group& g, const GroupElement& x);
void require_element(const Group& g, const GroupElement& x);

GroupElement zero_element(const Group& g);

GroupElement add(const GroupElement& x, const GroupElement& y);
GroupElement subtract(const GroupElement& x, const GroupElement& y);
GroupElement negate(const GroupElement& x);
GroupElement scalar_multiply(Int k, const GroupElement& x);

bool is_positive(const Group& g, const GroupElement& x);
bool leq(const Group& g, const GroupElement& x, const GroupElement& y);
bool equals(const Group& g, const GroupElement& x, const GroupElement& y);
bool is_zero(const Group& g, const GroupElement& x);

/// An ambient group together with a positive, nonzero unit u. The order-unit
/// property itself is not verified; the carrier is part of the input.
struct UnitalGroup {
    Group group;
    GroupElement unit;

    UnitalGroup(Group g, GroupElement u);

    bool operator==(const UnitalGroup&) const = default;
};

}  // namespace coex
