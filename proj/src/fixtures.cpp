#include "coex/fixtures.hpp"

#include <array>

namespace coex::fixtures {

namespace {

IntVector iv(std::vector<Int> entries) { return IntVector(std::move(entries)); }

}  // namespace

AlgebraRef chain4() {
    return make_algebra(Group{IntVectorGroup::coordinatewise(1)}, GroupElement(iv({3})));
}

AlgebraRef bool2() {
    return make_algebra(Group{IntVectorGroup::coordinatewise(2)}, GroupElement(iv({1, 1})));
}

AlgebraRef c2xc3() {
    return make_algebra(Group{IntVectorGroup::coordinatewise(2)}, GroupElement(iv({1, 2})));
}

AlgebraRef penta() {
    ConeSpec cone({iv({1, 0}), iv({1, 1}), iv({1, 2})}, iv({1, 0}));
    return make_algebra(Group{IntVectorGroup::with_cone(std::move(cone))},
                        GroupElement(iv({2, 2})));
}

AlgebraRef qubit(double psd_tolerance) {
    return make_algebra(Group{HermitianGroup::make(2, psd_tolerance)},
                        GroupElement(HermitianMatrix::identity(2)));
}

Effect int_effect(const AlgebraRef& algebra, std::vector<Int> entries) {
    return make_effect(algebra, GroupElement(iv(std::move(entries))));
}

Effect qubit_effect(const AlgebraRef& algebra,
                    std::vector<std::vector<std::array<double, 2>>> rows) {
    const int d = static_cast<int>(rows.size());
    std::vector<Complex> entries;
    entries.reserve(static_cast<std::size_t>(d) * d);
    for (const auto& row : rows) {
        if (static_cast<int>(row.size()) != d) throw Error("matrix rows must be square");
        for (const auto& e : row) entries.emplace_back(e[0], e[1]);
    }
    return make_effect(algebra, GroupElement(HermitianMatrix::make(d, std::move(entries))));
}

Effect projection_p(const AlgebraRef& qubit_algebra) {
    return qubit_effect(qubit_algebra, {{{1, 0}, {0, 0}}, {{0, 0}, {0, 0}}});
}

Effect projection_q(const AlgebraRef& qubit_algebra) {
    return qubit_effect(qubit_algebra, {{{0.5, 0}, {0.5, 0}}, {{0.5, 0}, {0.5, 0}}});
}

std::vector<std::string> names() { return {"CHAIN4", "BOOL2", "C2xC3", "PENTA", "QUBIT"}; }

AlgebraRef by_name(const std::string& name) {
    if (name == "CHAIN4") return chain4();
    if (name == "BOOL2") return bool2();
    if (name == "C2xC3") return c2xc3();
    if (name == "PENTA") return penta();
    if (name == "QUBIT") return qubit();
    throw Error("unknown fixture: " + name);
}

bool is_fixture_name(const std::string& name) {
    for (const auto& n : names())
        if (n == name) return true;
    return false;
}

}  // namespace coex::fixtures
