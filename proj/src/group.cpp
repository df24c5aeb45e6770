#include "coex/group.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace coex {

Int checked_add(Int a, Int b) {
    Int r;
    if (__builtin_add_overflow(a, b, &r)) throw OverflowError("integer overflow in addition");
    return r;
}

Int checked_sub(Int a, Int b) {
    Int r;
    if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("integer overflow in subtraction");
    return r;
}

Int checked_mul(Int a, Int b) {
    Int r;
    if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("integer overflow in multiplication");
    return r;
}

Int checked_neg(Int a) { return checked_sub(0, a); }

// ---------------------------------------------------------------------------
// IntVector

bool IntVector::is_zero() const {
    return std::all_of(entries.begin(), entries.end(), [](Int v) { return v == 0; });
}

static void require_same_dim(const IntVector& x, const IntVector& y) {
    if (x.dimension() != y.dimension())
        throw GroupMismatch("integer vectors of different dimension");
}

IntVector iv_add(const IntVector& x, const IntVector& y) {
    require_same_dim(x, y);
    IntVector r;
    r.entries.reserve(x.entries.size());
    for (std::size_t i = 0; i < x.entries.size(); ++i)
        r.entries.push_back(checked_add(x.entries[i], y.entries[i]));
    return r;
}

IntVector iv_sub(const IntVector& x, const IntVector& y) {
    require_same_dim(x, y);
    IntVector r;
    r.entries.reserve(x.entries.size());
    for (std::size_t i = 0; i < x.entries.size(); ++i)
        r.entries.push_back(checked_sub(x.entries[i], y.entries[i]));
    return r;
}

IntVector iv_neg(const IntVector& x) {
    IntVector r;
    r.entries.reserve(x.entries.size());
    for (Int v : x.entries) r.entries.push_back(checked_neg(v));
    return r;
}

IntVector iv_scale(Int k, const IntVector& x) {
    IntVector r;
    r.entries.reserve(x.entries.size());
    for (Int v : x.entries) r.entries.push_back(checked_mul(k, v));
    return r;
}

Int iv_dot(const IntVector& f, const IntVector& x) {
    require_same_dim(f, x);
    Int acc = 0;
    for (std::size_t i = 0; i < f.entries.size(); ++i)
        acc = checked_add(acc, checked_mul(f.entries[i], x.entries[i]));
    return acc;
}

// ---------------------------------------------------------------------------
// ConeSpec

ConeSpec::ConeSpec(std::vector<IntVector> generators)
    : ConeSpec(std::move(generators), IntVector{}) {}

ConeSpec::ConeSpec(std::vector<IntVector> generators, IntVector functional)
    : generators_(std::move(generators)), functional_(std::move(functional)) {
    if (generators_.empty()) throw Error("cone requires at least one generator");
    const int dim = generators_.front().dimension();
    for (const auto& g : generators_)
        if (g.dimension() != dim) throw GroupMismatch("cone generator dimension mismatch");
    if (functional_.entries.empty())
        functional_ = IntVector(std::vector<Int>(static_cast<std::size_t>(dim), 1));
    if (functional_.dimension() != dim)
        throw GroupMismatch("cone functional dimension mismatch");
    for (const auto& g : generators_) {
        const Int fg = iv_dot(functional_, g);
        if (fg <= 0) throw Error("cone functional must be strictly positive on every generator");
        gen_functional_values_.push_back(fg);
    }
}

bool ConeSpec::contains(const IntVector& x) const {
    if (x.dimension() != dimension())
        throw GroupMismatch("cone membership query with wrong dimension");
    return search(x, 0);
}

bool ConeSpec::search(const IntVector& remainder, std::size_t gen_index) const {
    if (remainder.is_zero()) return true;
    const Int fr = iv_dot(functional_, remainder);
    // f > 0 on generators, so any nonzero member has f-value > 0
    if (fr <= 0) return false;
    if (gen_index == generators_.size()) return false;
    const Int max_count = fr / gen_functional_values_[gen_index];
    IntVector rem = remainder;
    for (Int k = 0; k <= max_count; ++k) {
        if (search(rem, gen_index + 1)) return true;
        if (k < max_count) rem = iv_sub(rem, generators_[gen_index]);
    }
    return false;
}

IntVectorGroup IntVectorGroup::coordinatewise(int dimension) {
    if (dimension < 1) throw Error("group dimension must be positive");
    return IntVectorGroup{dimension, std::nullopt};
}

IntVectorGroup IntVectorGroup::with_cone(ConeSpec cone) {
    const int dim = cone.dimension();
    return IntVectorGroup{dim, std::move(cone)};
}

// ---------------------------------------------------------------------------
// HermitianMatrix

HermitianMatrix HermitianMatrix::make(int dimension, std::vector<Complex> entries,
                                      double symmetry_tol) {
    if (dimension < 1) throw Error("matrix dimension must be positive");
    if (entries.size() != static_cast<std::size_t>(dimension) * dimension)
        throw Error("matrix entry count does not match dimension");
    double worst = 0.0;
    for (int i = 0; i < dimension; ++i)
        for (int j = 0; j < dimension; ++j) {
            const Complex d = entries[static_cast<std::size_t>(i) * dimension + j] -
                              std::conj(entries[static_cast<std::size_t>(j) * dimension + i]);
            worst = std::max(worst, std::abs(d));
        }
    if (worst > symmetry_tol)
        throw Error("matrix is not Hermitian within tolerance (residual " +
                    std::to_string(worst) + ")");
    HermitianMatrix m;
    m.dimension = dimension;
    m.entries.resize(entries.size());
    for (int i = 0; i < dimension; ++i)
        for (int j = 0; j < dimension; ++j) {
            const Complex a = entries[static_cast<std::size_t>(i) * dimension + j];
            const Complex b = std::conj(entries[static_cast<std::size_t>(j) * dimension + i]);
            m.entries[static_cast<std::size_t>(i) * dimension + j] = (a + b) / 2.0;
        }
    return m;
}

HermitianMatrix HermitianMatrix::zero(int dimension) {
    HermitianMatrix m;
    m.dimension = dimension;
    m.entries.assign(static_cast<std::size_t>(dimension) * dimension, Complex{0.0, 0.0});
    return m;
}

HermitianMatrix HermitianMatrix::identity(int dimension) {
    HermitianMatrix m = zero(dimension);
    for (int i = 0; i < dimension; ++i) m.at(i, i) = Complex{1.0, 0.0};
    return m;
}

HermitianMatrix HermitianMatrix::diagonal(const std::vector<double>& diag) {
    HermitianMatrix m = zero(static_cast<int>(diag.size()));
    for (std::size_t i = 0; i < diag.size(); ++i)
        m.at(static_cast<int>(i), static_cast<int>(i)) = Complex{diag[i], 0.0};
    return m;
}

static void require_same_dim(const HermitianMatrix& x, const HermitianMatrix& y) {
    if (x.dimension != y.dimension)
        throw GroupMismatch("Hermitian matrices of different dimension");
}

HermitianMatrix hm_add(const HermitianMatrix& x, const HermitianMatrix& y) {
    require_same_dim(x, y);
    HermitianMatrix r = x;
    for (std::size_t i = 0; i < r.entries.size(); ++i) r.entries[i] += y.entries[i];
    return r;
}

HermitianMatrix hm_sub(const HermitianMatrix& x, const HermitianMatrix& y) {
    require_same_dim(x, y);
    HermitianMatrix r = x;
    for (std::size_t i = 0; i < r.entries.size(); ++i) r.entries[i] -= y.entries[i];
    return r;
}

HermitianMatrix hm_neg(const HermitianMatrix& x) {
    HermitianMatrix r = x;
    for (auto& e : r.entries) e = -e;
    return r;
}

HermitianMatrix hm_scale(Int k, const HermitianMatrix& x) {
    HermitianMatrix r = x;
    for (auto& e : r.entries) e *= static_cast<double>(k);
    return r;
}

std::vector<Complex> hm_raw_product(const HermitianMatrix& x, const HermitianMatrix& y) {
    require_same_dim(x, y);
    const int d = x.dimension;
    std::vector<Complex> out(static_cast<std::size_t>(d) * d, Complex{0.0, 0.0});
    for (int i = 0; i < d; ++i)
        for (int k = 0; k < d; ++k) {
            const Complex xik = x.at(i, k);
            if (xik == Complex{0.0, 0.0}) continue;
            for (int j = 0; j < d; ++j)
                out[static_cast<std::size_t>(i) * d + j] += xik * y.at(k, j);
        }
    return out;
}

double commutator_max_norm(const HermitianMatrix& x, const HermitianMatrix& y) {
    const auto xy = hm_raw_product(x, y);
    const auto yx = hm_raw_product(y, x);
    double worst = 0.0;
    for (std::size_t i = 0; i < xy.size(); ++i)
        worst = std::max(worst, std::abs(xy[i] - yx[i]));
    return worst;
}

HermitianMatrix hm_product(const HermitianMatrix& x, const HermitianMatrix& y,
                           double symmetry_tol) {
    return HermitianMatrix::make(x.dimension, hm_raw_product(x, y), symmetry_tol);
}

double hm_max_abs_diff(const HermitianMatrix& x, const HermitianMatrix& y) {
    require_same_dim(x, y);
    double worst = 0.0;
    for (std::size_t i = 0; i < x.entries.size(); ++i)
        worst = std::max(worst, std::abs(x.entries[i] - y.entries[i]));
    return worst;
}

std::vector<double> hermitian_eigenvalues(const HermitianMatrix& x) {
    const int d = x.dimension;
    Eigen::MatrixXcd m(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) m(i, j) = x.at(i, j);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw Error("Hermitian eigenvalue computation failed to converge");
    std::vector<double> ev(solver.eigenvalues().data(), solver.eigenvalues().data() + d);
    std::sort(ev.begin(), ev.end());
    return ev;
}

double min_eigenvalue(const HermitianMatrix& x) { return hermitian_eigenvalues(x).front(); }

double max_eigenvalue(const HermitianMatrix& x) { return hermitian_eigenvalues(x).back(); }

HermitianGroup HermitianGroup::make(int dimension, double psd_tolerance,
                                    std::optional<double> eq_tolerance) {
    if (dimension < 1) throw Error("group dimension must be positive");
    if (psd_tolerance < 0) throw Error("psd tolerance must be nonnegative");
    HermitianGroup g;
    g.dimension = dimension;
    g.psd_tolerance = psd_tolerance;
    g.eq_tolerance = eq_tolerance.value_or(psd_tolerance);
    if (g.eq_tolerance < 0) throw Error("equality tolerance must be nonnegative");
    return g;
}

// ---------------------------------------------------------------------------
// Carrier-generic layer

GroupKind Group::kind() const {
    if (const auto* ig = std::get_if<IntVectorGroup>(&carrier))
        return ig->cone ? GroupKind::IntCone : GroupKind::IntCoordinatewise;
    return GroupKind::Hermitian;
}

int Group::dimension() const {
    if (const auto* ig = std::get_if<IntVectorGroup>(&carrier)) return ig->dimension;
    return std::get<HermitianGroup>(carrier).dimension;
}

std::string kind_name(GroupKind kind) {
    switch (kind) {
        case GroupKind::IntCoordinatewise: return "int_coordinatewise";
        case GroupKind::IntCone: return "int_cone";
        case GroupKind::Hermitian: return "hermitian";
    }
    return "unknown";
}

bool element_in_group(const Group& g, const GroupElement& x) {
    if (g.is_integer()) {
        const auto* v = std::get_if<IntVector>(&x);
        return v && v->dimension() == g.dimension();
    }
    const auto* m = std::get_if<HermitianMatrix>(&x);
    return m && m->dimension == g.dimension();
}

void require_element(const Group& g, const GroupElement& x) {
    if (!element_in_group(g, x))
        throw GroupMismatch("element does not belong to the carrier " + kind_name(g.kind()));
}

GroupElement zero_element(const Group& g) {
    if (g.is_integer())
        return IntVector(std::vector<Int>(static_cast<std::size_t>(g.dimension()), 0));
    return HermitianMatrix::zero(g.dimension());
}

GroupElement add(const GroupElement& x, const GroupElement& y) {
    if (x.index() != y.index()) throw GroupMismatch("mixed carriers in addition");
    if (const auto* xv = std::get_if<IntVector>(&x))
        return iv_add(*xv, std::get<IntVector>(y));
    return hm_add(std::get<HermitianMatrix>(x), std::get<HermitianMatrix>(y));
}

GroupElement subtract(const GroupElement& x, const GroupElement& y) {
    if (x.index() != y.index()) throw GroupMismatch("mixed carriers in subtraction");
    if (const auto* xv = std::get_if<IntVector>(&x))
        return iv_sub(*xv, std::get<IntVector>(y));
    return hm_sub(std::get<HermitianMatrix>(x), std::get<HermitianMatrix>(y));
}

GroupElement negate(const GroupElement& x) {
    if (const auto* xv = std::get_if<IntVector>(&x)) return iv_neg(*xv);
    return hm_neg(std::get<HermitianMatrix>(x));
}

GroupElement scalar_multiply(Int k, const GroupElement& x) {
    if (const auto* xv = std::get_if<IntVector>(&x)) return iv_scale(k, *xv);
    return hm_scale(k, std::get<HermitianMatrix>(x));
}

bool is_positive(const Group& g, const GroupElement& x) {
    require_element(g, x);
    if (g.is_integer()) {
        const auto& v = std::get<IntVector>(x);
        const auto& ig = g.int_group();
        if (ig.cone) return ig.cone->contains(v);
        return std::all_of(v.entries.begin(), v.entries.end(), [](Int e) { return e >= 0; });
    }
    const auto& m = std::get<HermitianMatrix>(x);
    return min_eigenvalue(m) >= -g.hermitian_group().psd_tolerance;
}

bool leq(const Group& g, const GroupElement& x, const GroupElement& y) {
    require_element(g, x);
    require_element(g, y);
    return is_positive(g, subtract(y, x));
}

bool equals(const Group& g, const GroupElement& x, const GroupElement& y) {
    require_element(g, x);
    require_element(g, y);
    if (g.is_integer()) return std::get<IntVector>(x) == std::get<IntVector>(y);
    return hm_max_abs_diff(std::get<HermitianMatrix>(x), std::get<HermitianMatrix>(y)) <=
           g.hermitian_group().eq_tolerance;
}

bool is_zero(const Group& g, const GroupElement& x) {
    return equals(g, x, zero_element(g));
}

UnitalGroup::UnitalGroup(Group g, GroupElement u) : group(std::move(g)), unit(std::move(u)) {
    require_element(group, unit);
    if (!is_positive(group, unit)) throw Error("unit of a unital group must be positive");
    if (is_zero(group, unit)) throw Error("unit of a unital group must be nonzero");
}

}  // namespace coex
