// Parametric solution generators: the obvious h = a^4 + b^4 solution,
// Gerardin's family, the six degree-2/3/4 rows, the fifteen degree-4/6/7
// rows, and the two quartic-substitution families. Formulas are stored as
// coefficient vectors of integer polynomials in one or two parameters and
// evaluated exactly; each generated quadruple is re-verified before it is
// accepted.
#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "eqfour/arith.hpp"
#include "eqfour/model.hpp"

namespace eqfour::families {

// Sparse multivariate polynomial in up to two parameters.
struct Monomial {
    Int coef;
    int e1 = 0, e2 = 0;
};

struct Poly {
    std::vector<Monomial> terms; // normalized: sorted by (e1, e2), coef != 0

    static Poly constant(long v) {
        Poly p;
        if (v != 0) p.terms.push_back({Int(v), 0, 0});
        return p;
    }
    static Poly x() { Poly p; p.terms.push_back({Int(1), 1, 0}); return p; }
    static Poly y() { Poly p; p.terms.push_back({Int(1), 0, 1}); return p; }

    void normalize_terms() {
        std::sort(terms.begin(), terms.end(), [](const Monomial& a, const Monomial& b) {
            return std::tie(a.e1, a.e2) < std::tie(b.e1, b.e2);
        });
        std::vector<Monomial> out;
        for (auto& t : terms) {
            if (!out.empty() && out.back().e1 == t.e1 && out.back().e2 == t.e2)
                out.back().coef += t.coef;
            else
                out.push_back(t);
        }
        std::erase_if(out, [](const Monomial& t) { return t.coef == 0; });
        terms = std::move(out);
    }

    Int eval(const Int& v1, const Int& v2) const {
        Int acc = 0;
        for (const auto& t : terms) {
            Int term = t.coef;
            for (int i = 0; i < t.e1; ++i) term *= v1;
            for (int i = 0; i < t.e2; ++i) term *= v2;
            acc += term;
        }
        return acc;
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        Poly r = a;
        r.terms.insert(r.terms.end(), b.terms.begin(), b.terms.end());
        r.normalize_terms();
        return r;
    }
    friend Poly operator-(const Poly& a, const Poly& b) {
        Poly nb = b;
        for (auto& t : nb.terms) t.coef = -t.coef;
        return a + nb;
    }
    friend Poly operator*(const Poly& a, const Poly& b) {
        Poly r;
        for (const auto& ta : a.terms)
            for (const auto& tb : b.terms)
                r.terms.push_back({ta.coef * tb.coef, ta.e1 + tb.e1, ta.e2 + tb.e2});
        r.normalize_terms();
        return r;
    }
};

inline Poly operator*(long c, const Poly& p) { return Poly::constant(c) * p; }
inline Poly operator+(const Poly& p, long c) { return p + Poly::constant(c); }
inline Poly operator-(const Poly& p, long c) { return p - Poly::constant(c); }
inline Poly pw(const Poly& p, int e) {
    Poly r = Poly::constant(1);
    for (int i = 0; i < e; ++i) r = r * p;
    return r;
}

enum class FamilyId {
    Obvious, Gerardin,
    T1R1, T1R2, T1R3, T1R4, T1R5, T1R6,
    T2R1, T2R2, T2R3, T2R4, T2R5, T2R6, T2R7, T2R8,
    T2R9, T2R10, T2R11, T2R12, T2R13, T2R14, T2R15,
    DerivedA, DerivedB,
};

struct Family {
    FamilyId id{};
    std::string name;
    int arity = 1;
    Poly h, A, B, C, D;
};

inline const std::vector<Family>& catalog() {
    static const std::vector<Family> fams = [] {
        const Poly x = Poly::x(), y = Poly::y();
        std::vector<Family> v;
        auto add = [&](FamilyId id, std::string name, int arity,
                       Poly h, Poly A, Poly B, Poly C, Poly D) {
            v.push_back({id, std::move(name), arity, std::move(h), std::move(A),
                         std::move(B), std::move(C), std::move(D)});
        };
        const Poly zero = Poly::constant(0), one = Poly::constant(1), two = Poly::constant(2);

        // h = x^4 + y^4 has (y^2)^4 + h*x^4 = (x^2)^4 + h*y^4
        add(FamilyId::Obvious, "obvious", 2,
            pw(x, 4) + pw(y, 4), pw(y, 2), x, pw(x, 2), y);
        add(FamilyId::Gerardin, "gerardin", 1,
            2 * pw(x, 5) - 2 * pw(x, 3), 2 * pw(x, 2), x - 1, 2 * x, x + 1);

        add(FamilyId::T1R1, "t1r1", 1, pw(x, 2) + 2,
            pw(x, 3) + 2 * x + 1, pw(x, 2) - x + 1, pw(x, 3) + 2 * x - 1, pw(x, 2) + x + 1);
        add(FamilyId::T1R2, "t1r2", 1, pw(x, 3) + 4 * x, x - 2, two, x + 2, zero);
        add(FamilyId::T1R3, "t1r3", 1, 8 * pw(x, 3) + 8 * x, x - 1, one, x + 1, zero);
        add(FamilyId::T1R4, "t1r4", 1, pw(x, 4) - 1, x, zero, one, one);
        add(FamilyId::T1R5, "t1r5", 1, 2 * pw(x, 4) - 2,
            pw(x, 2) + 2 * x - 1, x - 1, pw(x, 2) - 2 * x - 1, x + 1);
        add(FamilyId::T1R6, "t1r6", 1, pw(x, 4) + 3 * pw(x, 2) + 1,
            pw(x, 2) + x + 1, x - 1, pw(x, 2) - x + 1, x + 1);

        add(FamilyId::T2R1, "t2r1", 1, (pw(x, 2) + 4) * (pw(x, 2) + 2),
            pw(x, 2) + x + 2, x - 1, pw(x, 2) - x + 2, x + 1);
        add(FamilyId::T2R2, "t2r2", 1, 2 * pw(x, 4) + 12 * pw(x, 2) + 2,
            pw(x, 2) + 2 * x + 1, x - 1, pw(x, 2) - 2 * x + 1, x + 1);
        add(FamilyId::T2R3, "t2r3", 1, 2 * ((pw(x, 2) + 9) * (pw(x, 2) + 3)),
            pw(x, 2) + 2 * x + 3, x - 1, pw(x, 2) - 2 * x + 3, x + 1);
        add(FamilyId::T2R4, "t2r4", 1, 3 * ((pw(x, 2) + 4) * (pw(x, 2) - 2)),
            pw(x, 2) + 3 * x - 2, x - 1, pw(x, 2) - 3 * x - 2, x + 1);
        add(FamilyId::T2R5, "t2r5", 1, 3 * pw(x, 4) + 33 * pw(x, 2) + 3,
            pw(x, 2) + 3 * x + 1, x - 1, pw(x, 2) - 3 * x + 1, x + 1);
        add(FamilyId::T2R6, "t2r6", 1, pw(x, 6) + 2 * pw(x, 4) + pw(x, 2) + 1,
            pw(x, 3) + x + 1, x - 1, pw(x, 3) + x - 1, x + 1);
        add(FamilyId::T2R7, "t2r7", 1, 2 * pw(x, 6) + 4 * pw(x, 4) + 2 * pw(x, 2) + 8,
            pw(x, 3) + x + 2, x - 1, pw(x, 3) + x - 2, x + 1);
        add(FamilyId::T2R8, "t2r8", 1, 3 * pw(x, 6) + 6 * pw(x, 4) + 3 * pw(x, 2) + 27,
            pw(x, 3) + x + 3, x - 1, pw(x, 3) + x - 3, x + 1);
        add(FamilyId::T2R9, "t2r9", 1, (pw(x, 2) + 2) * (pw(x, 4) + 3 * pw(x, 2) + 1),
            pw(x, 3) + 2 * x + 1, x - 1, pw(x, 3) + 2 * x - 1, x + 1);
        add(FamilyId::T2R10, "t2r10", 1,
            (2 * x + 1) * (pw(x, 6) + 2 * pw(x, 4) + 5 * pw(x, 2) + 4 * x + 1),
            pw(x, 3) + 3 * x + 1, x - 1, pw(x, 3) - x - 1, x + 1);
        add(FamilyId::T2R11, "t2r11", 1,
            2 * ((x + 1) * (pw(x, 6) + 2 * pw(x, 4) + 5 * pw(x, 2) + 8 * x + 4)),
            pw(x, 3) + 3 * x + 2, x - 1, pw(x, 3) - x - 2, x + 1);
        add(FamilyId::T2R12, "t2r12", 1,
            2 * ((x + 1) * (pw(x, 2) - x + 2) * (pw(x, 4) + pw(x, 2) + 4 * x + 4)),
            pw(x, 3) + 3 * x + 2, x - 1, pw(x, 3) - x + 2, x + 1);
        add(FamilyId::T2R13, "t2r13", 1,
            2 * ((pw(x, 2) + 4) * (pw(x, 2) + 3) * (pw(x, 2) + 1)),
            pw(x, 3) + 3 * x + 2, x - 1, pw(x, 3) + 3 * x - 2, x + 1);
        add(FamilyId::T2R14, "t2r14", 1, (pw(x, 2) + 3) * pw(pw(x, 2) + 1, 2),
            pw(x, 3) + 3 * x + 2, x - 2, pw(x, 3) + 3 * x - 2, x + 2);
        add(FamilyId::T2R15, "t2r15", 1,
            (2 * x + 3) * (pw(x, 6) + 2 * pw(x, 4) + 5 * pw(x, 2) + 12 * x + 9),
            pw(x, 3) + 3 * x + 3, x - 1, pw(x, 3) - x - 3, x + 1);

        // x = m, y = n
        add(FamilyId::DerivedA, "derived-a", 2,
            2 * (pw(pw(x, 2) - pw(y, 2), 3) * x * y),
            (y - x) * (y + x) * (pw(y, 4) - 4 * (pw(x, 2) * pw(y, 2)) - pw(x, 4)),
            2 * (pw(x, 3) * y) + 2 * (x * pw(y, 3)) + 2 * (pw(x, 2) * pw(y, 2)) - pw(y, 4) - pw(x, 4),
            (y - x) * (y + x) * (pw(y, 4) + 4 * (pw(x, 2) * pw(y, 2)) - pw(x, 4)),
            2 * (pw(x, 3) * y) + 2 * (x * pw(y, 3)) - 2 * (pw(x, 2) * pw(y, 2)) + pw(y, 4) + pw(x, 4));
        // C is read without the stray trailing factor; the printed form fails
        // the identity at (m, n) = (2, 1).
        add(FamilyId::DerivedB, "derived-b", 2,
            8 * ((pw(x, 2) - pw(y, 2)) * pw(x, 3) * pw(y, 3)),
            2 * (x * y) * (pw(x, 4) - 2 * (pw(x, 2) * pw(y, 2)) + pw(y, 4) + 2 * (pw(x, 3) * y) + 2 * (x * pw(y, 3))),
            pw(x, 4) - pw(y, 4) - 4 * (pw(x, 2) * pw(y, 2)),
            2 * (x * y) * (pw(x, 4) - 2 * (pw(x, 2) * pw(y, 2)) + pw(y, 4) - 2 * (pw(x, 3) * y) - 2 * (x * pw(y, 3))),
            pw(x, 4) - pw(y, 4) + 4 * (pw(x, 2) * pw(y, 2)));
        return v;
    }();
    return fams;
}

inline const Family& family(FamilyId id) {
    for (const auto& f : catalog())
        if (f.id == id) return f;
    throw std::invalid_argument("unknown family id");
}

inline const Family* family_by_name(const std::string& name) {
    for (const auto& f : catalog())
        if (f.name == name) return &f;
    return nullptr;
}

enum class GenerateStatus {
    Ok,
    NonPositiveH,   // h <= 0 at this parameter
    FourthPowerH,   // h is a perfect fourth power, excluded
    Trivial,        // quadruple normalizes to the trivial solution
    IdentityFailed, // quadruple does not satisfy the equation (custom families)
};

struct GenerateResult {
    GenerateStatus status = GenerateStatus::IdentityFailed;
    Int h;
    std::array<Int, 4> raw{}; // A, B, C, D before normalization
    std::optional<model::Solution> solution;

    bool admissible() const { return status == GenerateStatus::Ok; }
};

inline GenerateResult generate(const Family& f, const Int& p1, const Int& p2 = 0) {
    GenerateResult r;
    r.h = f.h.eval(p1, p2);
    r.raw = {f.A.eval(p1, p2), f.B.eval(p1, p2), f.C.eval(p1, p2), f.D.eval(p1, p2)};
    if (r.h <= 0) { r.status = GenerateStatus::NonPositiveH; return r; }
    if (arith::is_fourth_power(r.h)) { r.status = GenerateStatus::FourthPowerH; return r; }
    if (!model::verify(r.h, r.raw[0], r.raw[1], r.raw[2], r.raw[3])) {
        r.status = GenerateStatus::IdentityFailed;
        return r;
    }
    auto sol = model::normalize(r.h, r.raw[0], r.raw[1], r.raw[2], r.raw[3], "family:" + f.name);
    if (!sol) { r.status = GenerateStatus::Trivial; return r; }
    r.status = GenerateStatus::Ok;
    r.solution = std::move(sol);
    return r;
}

inline GenerateResult generate(FamilyId id, const Int& p1, const Int& p2 = 0) {
    const Family& f = family(id);
    if (f.arity == 1 && p2 != 0)
        throw std::invalid_argument("generate: family " + f.name + " takes one parameter");
    return generate(f, p1, p2);
}

struct FamilyHit {
    FamilyId id{};
    std::string name;
    std::array<Int, 2> params{};
    model::Solution solution;
};

// All (family, parameter) pairs with |param| <= bound whose h equals the
// target. Multiple hits can map to one solution; callers dedupe if needed.
inline std::vector<FamilyHit> families_matching_h(const Int& h, std::int64_t param_bound) {
    if (param_bound < 1) throw std::invalid_argument("families_matching_h: bound must be >= 1");
    std::vector<FamilyHit> hits;
    for (const auto& f : catalog()) {
        if (f.arity == 1) {
            for (std::int64_t p = -param_bound; p <= param_bound; ++p) {
                auto r = generate(f, Int(p));
                if (r.admissible() && r.h == h)
                    hits.push_back({f.id, f.name, {Int(p), 0}, *r.solution});
            }
        } else {
            for (std::int64_t p = -param_bound; p <= param_bound; ++p) {
                for (std::int64_t q = -param_bound; q <= param_bound; ++q) {
                    auto r = generate(f, Int(p), Int(q));
                    if (r.admissible() && r.h == h)
                        hits.push_back({f.id, f.name, {Int(p), Int(q)}, *r.solution});
                }
            }
        }
    }
    return hits;
}

struct SweepResult {
    bool ok = true;
    std::optional<std::array<Int, 2>> first_failure;
    std::size_t admissible = 0;
    std::size_t skipped = 0; // inadmissible parameter points
};

// Checks the identity at every admissible parameter point of [lo, hi]
// (square grid for two-parameter families).
inline SweepResult identity_sweep(const Family& f, std::int64_t lo, std::int64_t hi) {
    SweepResult res;
    auto check = [&](const Int& p1, const Int& p2) {
        auto r = generate(f, p1, p2);
        if (r.status == GenerateStatus::IdentityFailed) {
            if (res.ok) { res.ok = false; res.first_failure = {{p1, p2}}; }
            return;
        }
        if (r.admissible()) ++res.admissible; else ++res.skipped;
    };
    if (f.arity == 1) {
        for (std::int64_t p = lo; p <= hi; ++p) check(Int(p), 0);
    } else {
        for (std::int64_t p = lo; p <= hi; ++p)
            for (std::int64_t q = lo; q <= hi; ++q) check(Int(p), Int(q));
    }
    return res;
}

inline SweepResult identity_sweep(FamilyId id, std::int64_t lo, std::int64_t hi) {
    return identity_sweep(family(id), lo, hi);
}

} // namespace eqfour::families
