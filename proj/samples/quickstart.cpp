// Chern character of a line module over Q x Q, and the transgression
// between two connections on the dual numbers.
#include <iostream>

#include "kchern/kchern.hpp"

using namespace kchern;

namespace {

void print_class(const Algebra& alg, int degree, const Vec& v) {
    const auto& words = abelianization(alg, degree).basis_words();
    std::cout << "  degree " << degree << ":";
    bool any = false;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] == Rational(0)) continue;
        std::cout << " + (" << v[i] << ") " << io::word_text(alg, words[i]);
        any = true;
    }
    std::cout << (any ? "" : " 0") << "\n";
}

FormMatrix one_by_one(const Form& f) {
    FormMatrix m(1, 1);
    m(0, 0) = f;
    return m;
}

}  // namespace

int main() {
    const Algebra& qq = fixtures::q_times_q();
    Idempotent e(qq, one_by_one(Form::basis(qq, 1)));
    ChernClasses ch = chern(grassmann(e), 2);
    std::cout << "ch of the Grassmann connection on eA, A = Q x Q\n";
    for (std::size_t k = 0; k < ch.size(); ++k) print_class(qq, 2 * static_cast<int>(k), ch[k]);
    ExactnessResult ex = is_exact_class(qq, 2, ch[1]);
    std::cout << "  ch_1 exact? " << (ex.exact ? "yes" : "no") << "\n";

    const Algebra& dual = fixtures::dual_numbers();
    Idempotent one = Idempotent::identity(dual, 1);
    Connection d0 = grassmann(one);
    Connection d1(one, one_by_one(Form::basis(dual, 1).differential()));
    KCSClasses k = kcs_between(d0, d1, 2);
    std::cout << "KCS from d to d + dx, A = Q[x]/(x^2)\n";
    for (std::size_t i = 0; i < k.size(); ++i) print_class(dual, 2 * static_cast<int>(i) + 1, k[i]);
    ExactnessResult k1 = is_exact_class(dual, 1, k[0]);
    if (k1.exact && k1.primitive_form) std::cout << "  KCS_1 = d(" << io::to_json(*k1.primitive_form).dump() << ")\n";
}
