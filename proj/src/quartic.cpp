#include "d4/quartic.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace d4 {

// ---------------------------------------------------------------------------
// BiquadraticContext
// ---------------------------------------------------------------------------

BiquadraticContext BiquadraticContext::make(i64 a, i64 b) {
    SquarefreeInt sa(a), sb(b);
    if (a == b) throw domain_error("BiquadraticContext: a and b must be distinct");
    // keeps every derived 64-bit product (discriminants, |base*target|,
    // coprimality moduli) safely inside the machine-word range
    constexpr i64 generator_limit = i64{1} << 31;
    if (std::abs(a) > generator_limit || std::abs(b) > generator_limit)
        throw domain_error("BiquadraticContext: |a| and |b| must be at most 2^31");
    BiquadraticContext ctx;
    ctx.a = a;
    ctx.b = b;
    ctx.xi = xi_of(a, b);
    ctx.c3 = third_generator(a, b);
    if (ctx.c3 == 0 || ctx.c3 == 1 || !is_squarefree(ctx.c3))
        throw inconsistent_error("BiquadraticContext: ab/xi^2 is not a valid generator");
    ctx.disc_a = fundamental_discriminant_of(a);
    ctx.disc_b = fundamental_discriminant_of(b);
    ctx.disc_c3 = fundamental_discriminant_of(ctx.c3);
    auto abs64 = [](i64 x) { return x < 0 ? -x : x; };
    ctx.q_max = std::max({abs64(ctx.disc_a), abs64(ctx.disc_b), abs64(ctx.disc_c3)});
    return ctx;
}

i64 BiquadraticContext::remaining_quadratic(i64 base, i64 target) const {
    for (i64 c : {a, b, c3})
        if (c != base && c != target) return c;
    throw domain_error("remaining_quadratic: (base, target) does not match the context");
}

const char* galois_type_name(GaloisType t) {
    switch (t) {
        case GaloisType::K4: return "K4";
        case GaloisType::C4: return "C4";
        case GaloisType::D4: return "D4";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Galois classification
// ---------------------------------------------------------------------------

namespace {

// x^4 - 2 g x^2 + w with w = g^2 - h^2 base factors over Q exactly when
// w = beta^2 and 2g + 2 beta or 2g - 2 beta is a perfect square (the two
// monic quadratic factors are x^2 +- alpha x + beta). The other conceivable
// splits need h sqrt(base) rational -- a linear factor directly, a product of
// even quadratics via a square discriminant 4 h^2 base -- and square-free
// base rules both out.
bool quartic_reducible(const mpz_class& g, const mpz_class& w) {
    if (!is_perfect_square(w)) return false;
    mpz_class beta = isqrt(w);
    for (int sign : {1, -1}) {
        mpz_class alpha2 = 2 * g + 2 * sign * beta;
        if (alpha2 >= 0 && is_perfect_square(alpha2)) return true;
    }
    return false;
}

}  // namespace

GaloisType classify_galois(const SquarefreeInt& base, const mpz_class& g, const mpz_class& h) {
    if (h == 0) throw domain_error("classify_galois: h must be nonzero");
    mpz_class w = g * g - h * h * base.value();
    if (w == 0)
        throw reducible_error("classify_galois: g^2 = h^2 base, generator is degenerate");
    if (quartic_reducible(g, w)) {
        std::ostringstream os;
        os << "reducible: x^4 - " << 2 * g << "x^2 + " << w << " factors over Q";
        throw reducible_error(os.str());
    }
    if (is_perfect_square(w)) return GaloisType::K4;
    if (w % base.value() == 0 && is_perfect_square(w / base.value())) return GaloisType::C4;
    return GaloisType::D4;
}

// ---------------------------------------------------------------------------
// conjugacy classes
// ---------------------------------------------------------------------------

namespace {

// r = (1234), s = (13) acting on the roots 1,2,3,4 = +A, +B, -A, -B.
// symbol_pattern lists the quadratic character at the discriminants of
// F1 (fixed by <r>), F2 (fixed by <r^2, s>), F3 (fixed by <r^2, rs>).
constexpr std::array<ConjugacyClass, 5> class_table{{
    {D4Class::ID, "ID", 1, 1, 4, {+1, +1, +1}, {4, 0, 0}},
    {D4Class::R2, "R2", 1, 2, 0, {+1, +1, +1}, {0, 2, 0}},
    {D4Class::R, "R", 2, 4, 0, {+1, -1, -1}, {0, 0, 1}},
    {D4Class::S, "S", 2, 2, 2, {-1, +1, -1}, {2, 1, 0}},
    {D4Class::RS, "RS", 2, 2, 0, {-1, -1, +1}, {0, 2, 0}},
}};

}  // namespace

const ConjugacyClass& conjugacy_class(D4Class c) { return class_table[static_cast<int>(c)]; }
const char* class_name(D4Class c) { return conjugacy_class(c).name; }

D4Class class_power(D4Class c, u64 m) {
    switch (c) {
        case D4Class::ID: return D4Class::ID;
        case D4Class::R2: return (m % 2 == 0) ? D4Class::ID : D4Class::R2;
        case D4Class::R:
            switch (m % 4) {
                case 0: return D4Class::ID;
                case 2: return D4Class::R2;
                default: return D4Class::R;
            }
        case D4Class::S: return (m % 2 == 0) ? D4Class::ID : D4Class::S;
        case D4Class::RS: return (m % 2 == 0) ? D4Class::ID : D4Class::RS;
    }
    return D4Class::ID;
}

// ---------------------------------------------------------------------------
// fields
// ---------------------------------------------------------------------------

std::string D4Field::poly_string() const {
    std::ostringstream os;
    os << "x^4 ";
    mpz_class c2 = poly_c2();
    os << (c2 < 0 ? "- " : "+ ") << abs(c2) << "*x^2 ";
    mpz_class c0 = poly_c0();
    os << (c0 < 0 ? "- " : "+ ") << abs(c0);
    return os.str();
}

namespace {

mpz_class disc_bound_for(i64 base, i64 target, const mpz_class& n) {
    mpz_class b(static_cast<long>(base < 0 ? -base : base));
    mpz_class t(static_cast<long>(target < 0 ? -target : target));
    return 256 * b * b * t * n * n;
}

void check_pair_in_context(const BiquadraticContext& ctx, i64 base, i64 target) {
    bool ok = (base == ctx.a && target == ctx.b) || (base == ctx.a && target == ctx.c3) ||
              (base == ctx.b && target == ctx.c3);
    if (!ok) throw domain_error("field: (base, target) pair does not belong to the context");
}

}  // namespace

D4Field build_field(const BiquadraticContext& ctx, const GeneratorTriple& triple,
                    const mpz_class& m) {
    check_pair_in_context(ctx, triple.base, triple.target);
    if (m < 1) throw domain_error("build_field: m must be a positive integer");
    if (!m.fits_slong_p() || !is_squarefree(static_cast<i64>(m.get_si())))
        throw domain_error("build_field: m must be square-free");
    mpz_class q = abs(mpz_class(static_cast<long>(triple.base)) * triple.target);
    if (gcd(m, q) != 1) {
        std::ostringstream os;
        os << "build_field: m = " << m << " must be coprime to |base*target| = " << q;
        throw domain_error(os.str());
    }

    D4Field K;
    K.ctx = ctx;
    K.base = triple.base;
    K.target = triple.target;
    K.g = triple.g0 * m;
    K.h = triple.h0 * m;
    K.n = triple.n0 * m;
    K.m = m;
    K.disc_bound = disc_bound_for(K.base, K.target, K.n);
    K.galois_type = classify_galois(SquarefreeInt(K.base), K.g, K.h);
    if (K.galois_type != GaloisType::D4)
        throw inconsistent_error("build_field: scaled generator is not dihedral");
    if (K.g * K.g - K.h * K.h * K.base != K.n * K.n * K.target)
        throw inconsistent_error("build_field: generator equation violated");
    return K;
}

D4Field field_from_generators(const BiquadraticContext& ctx, i64 base, const mpz_class& g,
                              const mpz_class& h) {
    D4Field K;
    K.ctx = ctx;
    K.base = base;
    K.galois_type = classify_galois(SquarefreeInt(base), g, h);
    K.g = g;
    K.h = h;
    K.m = 1;

    // n^2 target = g^2 - h^2 base with target square-free
    mpz_class w = g * g - h * h * base;
    if (!w.fits_slong_p())
        throw budget_error("field_from_generators: g^2 - h^2 base too large to decompose");
    i64 wv = static_cast<i64>(w.get_si());
    u64 rem = static_cast<u64>(wv < 0 ? -wv : wv);
    u64 n = 1;
    constexpr u64 peel_bound = 2'100'000;
    for (u64 d = 2; d <= peel_bound && d * d <= rem; ++d)
        while (rem % (d * d) == 0) {
            rem /= d * d;
            n *= d;
        }
    // the cofactor has at most two prime factors (all > 2.1e6, and three such
    // would overflow 2^63), so one square test settles the square part
    mpz_class r(static_cast<unsigned long>(rem));
    if (rem > 1 && is_perfect_square(r)) {
        n *= isqrt(r).get_ui();
        rem = 1;
    }
    K.target = (wv < 0) ? -static_cast<i64>(rem) : static_cast<i64>(rem);
    K.n = mpz_class(static_cast<unsigned long>(n));
    K.disc_bound = disc_bound_for(K.base, K.target, K.n);
    return K;
}

std::pair<i64, i64> extended_quadratics(const D4Field& K) {
    if (K.galois_type != GaloisType::D4)
        throw domain_error("extended_quadratics: only defined for dihedral fields");
    return {K.base, K.target};
}

// ---------------------------------------------------------------------------
// field identity
// ---------------------------------------------------------------------------

namespace {

bool rational_is_square(const mpq_class& r) {
    if (r < 0) return false;
    return is_perfect_square(r.get_num()) && is_perfect_square(r.get_den());
}

// is G + H sqrt(c) the square of an element of Q(sqrt(c))?
bool square_in_quadratic(i64 c, const mpz_class& G, const mpz_class& H) {
    if (G == 0 && H == 0) return true;
    if (H == 0) {
        // rational values: either G = x^2 or G = c y^2
        return is_perfect_square(G) || is_perfect_square(G * c);
    }
    mpz_class nm = G * G - H * H * c;
    if (!is_perfect_square(nm)) return false;
    mpz_class k = isqrt(nm);
    // (x + y sqrt(c))^2 = G + H sqrt(c) forces x^2 = (G +- k)/2
    for (int sign : {1, -1}) {
        mpq_class x2(G + sign * k, 2);
        x2.canonicalize();
        if (x2 > 0 && rational_is_square(x2)) return true;
    }
    return false;
}

}  // namespace

FieldIdentity is_same_field(const D4Field& K1, const D4Field& K2) {
    if (K1.base != K2.base || K1.ctx.a != K2.ctx.a || K1.ctx.b != K2.ctx.b)
        throw domain_error("is_same_field: incomparable (different context or base)");
    i64 c = K1.base;
    // theta1 * theta2 and theta1 * conj(theta2)
    mpz_class G1 = K1.g * K2.g + K1.h * K2.h * c, H1 = K1.g * K2.h + K2.g * K1.h;
    mpz_class G2 = K1.g * K2.g - K1.h * K2.h * c, H2 = K2.g * K1.h - K1.g * K2.h;
    FieldIdentity id;
    id.same_subfield = square_in_quadratic(c, G1, H1);
    id.isomorphic = id.same_subfield || square_in_quadratic(c, G2, H2);
    return id;
}

// ---------------------------------------------------------------------------
// lattice and ramification table
// ---------------------------------------------------------------------------

namespace {

std::string sqrt_expr(const mpz_class& u, const mpz_class& v, i64 rad) {
    std::ostringstream os;
    os << "sqrt(" << u << (v < 0 ? "-" : "+") << abs(v) << "*sqrt(" << rad << "))";
    return os.str();
}

}  // namespace

FieldLattice field_lattice(const D4Field& K) {
    if (K.galois_type != GaloisType::D4)
        throw domain_error("field_lattice: only defined for dihedral fields");
    FieldLattice L;
    // quartic subfields of the closure: sqrt(g +- h sqrt(base)) and
    // sqrt(2g +- 2n sqrt(target))
    L.quartics[0] = {sqrt_expr(K.g, -K.h, K.base), "<s>"};
    L.quartics[1] = {sqrt_expr(K.g, K.h, K.base), "<r^2 s>"};
    L.quartics[2] = {sqrt_expr(2 * K.g, -2 * K.n, K.target), "<r s>"};
    L.quartics[3] = {sqrt_expr(2 * K.g, 2 * K.n, K.target), "<r^3 s>"};
    i64 f1 = K.ctx.remaining_quadratic(K.base, K.target);
    auto sq = [](i64 c) {
        std::ostringstream os;
        os << "sqrt(" << c << ")";
        return os.str();
    };
    L.quadratics[0] = {sq(f1), "<r>"};
    L.quadratics[1] = {sq(K.base), "<r^2, s>"};
    L.quadratics[2] = {sq(K.target), "<r^2, r s>"};
    return L;
}

TameProfile tame_profile(const D4Field& K, D4Class inertia) {
    if (K.galois_type != GaloisType::D4)
        throw domain_error("tame_profile: only defined for dihedral fields");
    switch (inertia) {
        case D4Class::ID: return {{0, 0, 0}, 0, 0};
        case D4Class::R2: return {{0, 0, 0}, 2, 4};
        case D4Class::S:  return {{1, 0, 1}, 1, 4};
        case D4Class::RS: return {{1, 1, 0}, 2, 4};
        case D4Class::R:  return {{0, 1, 1}, 3, 6};
    }
    throw domain_error("tame_profile: unknown class");
}

std::string field_to_json(const D4Field& K) {
    std::ostringstream os;
    os << "{\"a\":" << K.ctx.a << ",\"b\":" << K.ctx.b << ",\"base\":" << K.base
       << ",\"target\":" << K.target << ",\"g\":\"" << K.g << "\",\"h\":\"" << K.h
       << "\",\"n\":\"" << K.n << "\",\"m\":\"" << K.m << "\",\"poly\":[\"" << K.poly_c0()
       << "\",\"0\",\"" << K.poly_c2() << "\",\"0\",\"1\"],\"disc_bound\":\"" << K.disc_bound
       << "\",\"galois_type\":\"" << galois_type_name(K.galois_type) << "\"}";
    return os.str();
}

}  // namespace d4
