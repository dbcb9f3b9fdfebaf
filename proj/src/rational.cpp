#include "qtop/rational.hpp"

#include <cctype>
#include <cmath>
#include <cstdint>

namespace qtop {

const char* err_kind_name(ErrKind k) {
    switch (k) {
        case ErrKind::Dimension: return "dimension";
        case ErrKind::Rank: return "rank";
        case ErrKind::Range: return "range";
        case ErrKind::Schema: return "schema";
        case ErrKind::Validation: return "validation";
        case ErrKind::Numeric: return "numeric";
        case ErrKind::Gap: return "gap";
        case ErrKind::Overlap: return "overlap";
        case ErrKind::Degeneracy: return "degeneracy";
        case ErrKind::StratumResolution: return "stratum-resolution";
        case ErrKind::ConstantIndex: return "constant-index";
        case ErrKind::UnsupportedDimension: return "unsupported-dimension";
        case ErrKind::VertexOrder: return "vertex-order";
        case ErrKind::Internal: return "internal";
    }
    return "unknown";
}

Rat rationalize_double(double x) {
    if (!std::isfinite(x)) fail(ErrKind::Validation, "non-finite float input");
    const double den = 1e6;
    double num = std::round(x * den);
    if (std::fabs(num) > 9e15) fail(ErrKind::Validation, "float input out of rationalizable range");
    Rat r(static_cast<long>(num), 1000000L);
    r.canonicalize();
    return r;
}

Rat parse_rational(const std::string& s, bool* rationalized) {
    if (rationalized) *rationalized = false;
    std::string t;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) t.push_back(c);
    if (t.empty()) fail(ErrKind::Schema, "empty rational literal");
    auto slash = t.find('/');
    if (slash != std::string::npos) {
        std::string num = t.substr(0, slash), den = t.substr(slash + 1);
        if (num.empty() || den.empty()) fail(ErrKind::Schema, "malformed rational '" + s + "'");
        try {
            mpz_class nz(num), dz(den);
            if (dz == 0) fail(ErrKind::Schema, "zero denominator in '" + s + "'");
            Rat r{nz, dz};
            r.canonicalize();
            return r;
        } catch (const std::invalid_argument&) {
            fail(ErrKind::Schema, "malformed rational '" + s + "'");
        }
    }
    if (t.find('.') != std::string::npos || t.find('e') != std::string::npos ||
        t.find('E') != std::string::npos) {
        if (rationalized) *rationalized = true;
        try {
            return rationalize_double(std::stod(t));
        } catch (const std::exception&) {
            fail(ErrKind::Schema, "malformed numeric literal '" + s + "'");
        }
    }
    try {
        return Rat(mpz_class(t));
    } catch (const std::invalid_argument&) {
        fail(ErrKind::Schema, "malformed integer literal '" + s + "'");
    }
}

RatVec primitive_ray(const RatVec& v) {
    mpz_class lcm = 1;
    for (const Rat& r : v) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), r.get_den().get_mpz_t());
    std::vector<mpz_class> w(v.size());
    mpz_class g = 0;
    for (size_t i = 0; i < v.size(); ++i) {
        w[i] = v[i].get_num() * (lcm / v[i].get_den());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), w[i].get_mpz_t());
    }
    RatVec out(v.size());
    for (size_t i = 0; i < v.size(); ++i) out[i] = (g == 0) ? Rat(0) : Rat(w[i] / g);
    return out;
}

bool is_zero_vec(const RatVec& v) {
    for (const Rat& r : v)
        if (r != 0) return false;
    return true;
}

Rat dot(const RatVec& a, const RatVec& b) {
    require(a.size() == b.size(), ErrKind::Dimension, "dot: length mismatch");
    Rat s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

std::string rat_to_string(const Rat& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

}  // namespace qtop
