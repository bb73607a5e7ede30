#pragma once

// JSON encodings. Rationals are strings; everything round-trips exactly.

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "kchern/transgression.hpp"

namespace kchern::io {

using json = nlohmann::json;

namespace detail {

[[noreturn]] inline void fail(const std::string& what) { throw ParseError(what); }

inline const json& field(const json& j, const char* key) {
    if (!j.is_object()) fail(std::string("expected an object with key '") + key + "'");
    auto it = j.find(key);
    if (it == j.end()) fail(std::string("missing key '") + key + "'");
    return *it;
}

inline const json& array(const json& j, const char* what) {
    if (!j.is_array()) fail(std::string(what) + " must be an array");
    return j;
}

inline int to_int(const json& j, const char* what) {
    if (!j.is_number_integer()) fail(std::string(what) + " must be an integer");
    return j.get<int>();
}

/// Parses "t^k", "s^i t^j", "1", "s", "t", "s t^2" and similar monomial keys.
inline std::pair<int, int> monomial_key(const std::string& key) {
    int ds = 0, dt = 0;
    std::istringstream in(key);
    std::string tok;
    bool any = false;
    while (in >> tok) {
        any = true;
        if (tok == "1") continue;
        char var = tok[0];
        int e = 1;
        if (tok.size() > 1) {
            if (tok[1] != '^' || tok.size() < 3) fail("bad monomial key '" + key + "'");
            try {
                std::size_t used = 0;
                e = std::stoi(tok.substr(2), &used);
                if (used != tok.size() - 2 || e < 0) fail("bad monomial key '" + key + "'");
            } catch (const std::logic_error&) {
                fail("bad monomial key '" + key + "'");
            }
        }
        if (var == 's')
            ds += e;
        else if (var == 't')
            dt += e;
        else
            fail("bad monomial key '" + key + "'");
    }
    if (!any) fail("empty monomial key");
    return {ds, dt};
}

}  // namespace detail

// --- scalars ---------------------------------------------------------------

inline json to_json(const Rational& r) { return r.str(); }

inline Rational rational_from_json(const json& j) {
    if (j.is_number_integer()) return Rational(j.get<long long>());
    if (!j.is_string()) detail::fail("rational must be a string such as \"-3/2\"");
    try {
        return Rational::parse(j.get<std::string>());
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception& e) {
        detail::fail("bad rational '" + j.get<std::string>() + "': " + e.what());
    }
}

inline json to_json(const Vec& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(to_json(x));
    return a;
}

inline Vec vec_from_json(const json& j) {
    Vec v;
    for (const auto& x : detail::array(j, "coefficient vector")) v.push_back(rational_from_json(x));
    return v;
}

inline json to_json(const Poly1& p) {
    json o = json::object();
    for (int k = 0; k <= p.degree(); ++k)
        if (!p.coeff(k).is_zero()) o["t^" + std::to_string(k)] = to_json(p.coeff(k));
    return o;
}

inline Poly1 poly1_from_json(const json& j) {
    if (!j.is_object()) return Poly1(rational_from_json(j));
    Poly1 p;
    for (const auto& [key, val] : j.items()) {
        auto [ds, dt] = detail::monomial_key(key);
        if (ds != 0) detail::fail("unexpected s in a one-parameter coefficient");
        p += Poly1::monomial(dt, rational_from_json(val));
    }
    return p;
}

inline json to_json(const Poly2& p) {
    json o = json::object();
    for (const auto& [key, c] : p.terms())
        o["s^" + std::to_string(key.first) + " t^" + std::to_string(key.second)] = to_json(c);
    return o;
}

inline Poly2 poly2_from_json(const json& j) {
    if (!j.is_object()) return Poly2(rational_from_json(j));
    Poly2 p;
    for (const auto& [key, val] : j.items()) {
        auto [ds, dt] = detail::monomial_key(key);
        p += Poly2::monomial(ds, dt, rational_from_json(val));
    }
    return p;
}

template <class S>
S scalar_from_json(const json& j) {
    if constexpr (std::is_same_v<S, Rational>)
        return rational_from_json(j);
    else if constexpr (std::is_same_v<S, Poly1>)
        return poly1_from_json(j);
    else
        return poly2_from_json(j);
}

// --- algebras --------------------------------------------------------------

inline json to_json(const Algebra& a) {
    json mul = json::array();
    for (int i = 0; i < a.dim(); ++i) {
        json row = json::array();
        for (int j = 0; j < a.dim(); ++j) row.push_back(to_json(a.product_vec(i, j)));
        mul.push_back(row);
    }
    return {{"dim", a.dim()}, {"names", a.names()}, {"mul", mul}};
}

/// Raw table without validation, so callers can report unit/associativity failures.
struct AlgebraTable {
    std::vector<std::vector<Vec>> mul;
    std::vector<std::string> names;
};

inline AlgebraTable algebra_table_from_json(const json& j) {
    AlgebraTable t;
    int m = detail::to_int(detail::field(j, "dim"), "dim");
    if (m < 1) throw ValidationError("algebra must have dimension >= 1");
    if (j.contains("names")) {
        for (const auto& n : detail::array(j["names"], "names")) {
            if (!n.is_string()) detail::fail("names must be strings");
            t.names.push_back(n.get<std::string>());
        }
    }
    const json& mul = detail::array(detail::field(j, "mul"), "mul");
    if (static_cast<int>(mul.size()) != m) throw ValidationError("mul must have dim rows");
    for (const auto& row : mul) {
        std::vector<Vec> r;
        for (const auto& cell : detail::array(row, "mul row")) r.push_back(vec_from_json(cell));
        t.mul.push_back(std::move(r));
    }
    return t;
}

inline Algebra algebra_from_json(const json& j, int degree_cap = Algebra::kDefaultDegreeCap) {
    AlgebraTable t = algebra_table_from_json(j);
    return Algebra(t.mul, t.names, degree_cap);
}

inline json to_json(const AlgElement& e) { return to_json(e.coeffs()); }

inline AlgElement element_from_json(const Algebra& alg, const json& j) {
    Vec v = vec_from_json(j);
    if (static_cast<int>(v.size()) != alg.dim()) throw ValidationError("algebra element has the wrong length");
    return AlgElement(alg, std::move(v));
}

inline json to_json(const AlgebraHom& psi) {
    json images = json::array();
    for (int i = 0; i < psi.source().dim(); ++i) {
        Vec v(static_cast<std::size_t>(psi.target().dim()));
        for (const auto& [l, c] : psi.image(i)) v[static_cast<std::size_t>(l)] = c;
        images.push_back(to_json(v));
    }
    return {{"source", to_json(psi.source())}, {"target", to_json(psi.target())}, {"images", images}};
}

inline AlgebraHom hom_from_json(const json& j, int degree_cap = Algebra::kDefaultDegreeCap) {
    Algebra src = algebra_from_json(detail::field(j, "source"), degree_cap);
    Algebra tgt = algebra_from_json(detail::field(j, "target"), degree_cap);
    std::vector<Vec> images;
    for (const auto& x : detail::array(detail::field(j, "images"), "images")) images.push_back(element_from_json(tgt, x).coeffs());
    if (static_cast<int>(images.size()) != src.dim()) throw ValidationError("hom needs one image per source basis element");
    return AlgebraHom::from_images(src, tgt, images);
}

// --- forms -----------------------------------------------------------------

template <class S>
json to_json(const UForm<S>& f) {
    json a = json::array();
    for (const auto& [w, c] : f.terms()) {
        std::vector<int> slots;
        for (int k = 0; k < w.size(); ++k) slots.push_back(w[k]);
        a.push_back({{"degree", w.degree()}, {"word", slots}, {"coeff", to_json(c)}});
    }
    return a;
}

template <class S = Rational>
UForm<S> form_from_json(const Algebra& alg, const json& j) {
    UForm<S> f(alg);
    for (const auto& term : detail::array(j, "form")) {
        std::vector<int> slots;
        for (const auto& x : detail::array(detail::field(term, "word"), "word")) slots.push_back(detail::to_int(x, "word slot"));
        if (slots.empty()) detail::fail("word must contain at least the degree-0 slot");
        if (term.contains("degree") && detail::to_int(term["degree"], "degree") != static_cast<int>(slots.size()) - 1)
            throw ValidationError("term degree does not match its word length");
        if (static_cast<int>(slots.size()) > Word::kMaxSlots) throw CapExceeded(static_cast<int>(slots.size()) - 1, alg.degree_cap());
        f.add_term(Word(slots), scalar_from_json<S>(detail::field(term, "coeff")));
    }
    return f;
}

template <class F>
json matrix_to_json(const Mat<F>& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
        rows.push_back(row);
    }
    return rows;
}

template <class Fn>
auto matrix_from_json(const json& j, Fn&& entry) -> Mat<decltype(entry(j))> {
    using F = decltype(entry(j));
    const json& rows = detail::array(j, "matrix");
    std::size_t n = rows.size();
    std::size_t c = n ? detail::array(rows[0], "matrix row").size() : 0;
    Mat<F> m(n, c);
    for (std::size_t i = 0; i < n; ++i) {
        const json& row = detail::array(rows[i], "matrix row");
        if (row.size() != c) throw ValidationError("ragged matrix");
        for (std::size_t k = 0; k < c; ++k) m(i, k) = entry(row[k]);
    }
    return m;
}

/// Degree-0 matrices are written as arrays of algebra coefficients.
inline json element_matrix_to_json(const FormMatrix& m) {
    return matrix_to_json(m.map([](const Form& f) {
        Vec v(static_cast<std::size_t>(f.has_algebra() ? f.algebra().dim() : 0));
        for (const auto& [w, c] : f.terms()) v[static_cast<std::size_t>(w[0])] = c;
        return v;
    }));
}

inline FormMatrix element_matrix_from_json(const Algebra& alg, const json& j) {
    return matrix_from_json(j, [&alg](const json& x) { return Form::from_element(element_from_json(alg, x)); });
}

inline json to_json(const Idempotent& p) { return element_matrix_to_json(p.matrix()); }

inline Idempotent idempotent_from_json(const Algebra& alg, const json& j) {
    return Idempotent(alg, element_matrix_from_json(alg, j));
}

inline json to_json(const Connection& c) {
    return {{"p", to_json(c.idempotent())}, {"theta", matrix_to_json(c.potential())}};
}

inline FormMatrix potential_from_json(const Algebra& alg, const json& j, std::size_t n) {
    if (j.is_array() && j.empty()) return FormMatrix(n, n);
    return matrix_from_json(j, [&alg](const json& x) { return form_from_json(alg, x); });
}

inline Connection connection_from_json(const Algebra& alg, const json& j) {
    Idempotent p = idempotent_from_json(alg, detail::field(j, "p"));
    if (!j.contains("theta")) return grassmann(p);
    return Connection(p, potential_from_json(alg, j["theta"], p.size()));
}

inline json to_json(const PolyPath& path) {
    return {{"p", to_json(path.idempotent())}, {"theta", matrix_to_json(path.potential())}};
}

inline PolyPath path_from_json(const Algebra& alg, const json& j) {
    Idempotent p = idempotent_from_json(alg, detail::field(j, "p"));
    const json& t = detail::field(j, "theta");
    if (t.is_array() && t.empty()) return PolyPath(p, PathMatrix(p.size(), p.size()));
    return PolyPath(p, matrix_from_json(t, [&alg](const json& x) { return form_from_json<Poly1>(alg, x); }));
}

inline json to_json(const ModuleIso& phi) {
    return {{"p0", to_json(phi.source())},
            {"p1", to_json(phi.target())},
            {"u", element_matrix_to_json(phi.forward())},
            {"v", element_matrix_to_json(phi.backward())}};
}

inline ModuleIso iso_from_json(const Algebra& alg, const json& j) {
    return ModuleIso(idempotent_from_json(alg, detail::field(j, "p0")), idempotent_from_json(alg, detail::field(j, "p1")),
                     element_matrix_from_json(alg, detail::field(j, "u")),
                     element_matrix_from_json(alg, detail::field(j, "v")));
}

// --- classes ---------------------------------------------------------------

/// "a0 da1 ... dan" using the algebra's basis names.
inline std::string word_text(const Algebra& alg, const Word& w) {
    const auto& names = alg.names();
    std::string out = names[static_cast<std::size_t>(w[0])];
    for (int i = 1; i < w.size(); ++i) out += " d" + names[static_cast<std::size_t>(w[i])];
    return out;
}

/// Graded classes in quotient-basis coordinates, with the basis words as a legend.
inline json graded_to_json(const Algebra& alg, const GradedClass& g) {
    json a = json::array();
    for (const auto& [n, v] : g) {
        json legend = json::array();
        for (const Word& w : abelianization(alg, n).basis_words()) legend.push_back(word_text(alg, w));
        a.push_back({{"degree", n}, {"coords", to_json(v)}, {"basis", legend}});
    }
    return a;
}

inline GradedClass graded_from_json(const Algebra& alg, const json& j) {
    GradedClass g;
    for (const auto& e : detail::array(j, "graded class")) {
        int n = detail::to_int(detail::field(e, "degree"), "degree");
        Vec v = vec_from_json(detail::field(e, "coords"));
        if (v.size() != abelianization(alg, n).dim()) throw ValidationError("class has the wrong number of coordinates");
        g[n] = std::move(v);
    }
    return normalized(std::move(g));
}

inline json to_json(const TForm& w) { return {{"base", to_json(w.base())}, {"dt", to_json(w.dt_part())}}; }

inline TForm tform_from_json(const Algebra& alg, const json& j) {
    return TForm(form_from_json<Poly1>(alg, detail::field(j, "base")), form_from_json<Poly1>(alg, detail::field(j, "dt")));
}

// --- files -----------------------------------------------------------------

inline json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot read '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw ParseError("'" + path + "': " + e.what());
    }
}

inline void write_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write '" + path + "'");
    out << j.dump(2) << "\n";
}

}  // namespace kchern::io
