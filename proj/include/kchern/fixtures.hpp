#pragma once

// Builtin algebras and homs between them.

#include <string>
#include <vector>

#include "kchern/algebra.hpp"

namespace kchern::fixtures {

struct Fixture {
    std::string name;
    std::string description;
    Algebra algebra;
};

inline const Algebra& rationals() {
    static const Algebra a = make_truncated_poly(1);
    return a;
}
inline const Algebra& dual_numbers() {
    static const Algebra a = make_truncated_poly(2);
    return a;
}
inline const Algebra& truncated_cubic() {
    static const Algebra a = make_truncated_poly(3);
    return a;
}
inline const Algebra& q_times_q() {
    static const Algebra a = make_product(rationals(), rationals());
    return a;
}
inline const Algebra& m2() {
    static const Algebra a = make_matrix_algebra(2);
    return a;
}
inline const Algebra& group_c2() {
    static const Algebra a = make_group_algebra(cyclic_group_table(2));
    return a;
}

inline std::vector<Fixture> all() {
    return {{"Q", "rationals", rationals()},
            {"dual", "dual numbers Q[x]/(x^2)", dual_numbers()},
            {"trunc3", "Q[x]/(x^3)", truncated_cubic()},
            {"QxQ", "Q x Q, basis 1, e", q_times_q()},
            {"M2", "2x2 matrices, basis 1, E11, E12, E21", m2()},
            {"QC2", "group algebra of C2, basis 1, g", group_c2()}};
}

inline std::vector<std::string> names() {
    std::vector<std::string> out;
    for (const auto& f : all()) out.push_back(f.name);
    return out;
}

inline Fixture by_name(const std::string& name) {
    for (auto& f : all())
        if (f.name == name) return f;
    throw ValidationError("unknown fixture '" + name + "'");
}

inline AlgebraHom from_images(const Algebra& src, const Algebra& tgt, const std::vector<Vec>& images) {
    return AlgebraHom::from_images(src, tgt, images);
}

/// Nontrivial homs out of the named fixture.
inline std::vector<AlgebraHom> homs_from(const std::string& name) {
    const Rational o(1), z(0), m(-1), two(2);
    if (name == "dual") return {from_images(dual_numbers(), rationals(), {{o}, {z}})};
    if (name == "trunc3") return {from_images(truncated_cubic(), dual_numbers(), {{o, z}, {z, o}, {z, z}})};
    if (name == "QxQ")
        return {from_images(q_times_q(), rationals(), {{o}, {o}}), from_images(q_times_q(), rationals(), {{o}, {z}}),
                from_images(q_times_q(), m2(), {{o, z, z, z}, {z, o, z, z}})};
    if (name == "QC2") return {from_images(group_c2(), q_times_q(), {{o, z}, {m, two}})};
    if (name == "Q") return {from_images(rationals(), q_times_q(), {{o, z}})};
    if (name == "M2") return {AlgebraHom::identity(m2())};
    return {};
}

}  // namespace kchern::fixtures
