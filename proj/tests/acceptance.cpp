// Acceptance suite: one PASS/FAIL line per criterion. Soft criteria are
// reported but never change the exit status.

#include <gmpxx.h>
#include <mpfr.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "pathtrack/corrector/newton.hpp"
#include "pathtrack/evaldiff/evaluator.hpp"
#include "pathtrack/evaldiff/old_baseline.hpp"
#include "pathtrack/evaldiff/speelpenning.hpp"
#include "pathtrack/metrics/bench.hpp"
#include "pathtrack/metrics/metrics.hpp"
#include "pathtrack/polysys/homotopy.hpp"
#include "pathtrack/polysys/system.hpp"
#include "pathtrack/scalar/double_double.hpp"
#include "pathtrack/scalar/eft.hpp"
#include "pathtrack/tracker/tracker.hpp"

using namespace pathtrack;

namespace {

using clock_type = std::chrono::steady_clock;
using C = Complex<double>;
using CD = Complex<DoubleDouble>;
using StdC = std::complex<double>;

double seconds_since(clock_type::time_point start)
{
    return std::chrono::duration<double>(clock_type::now() - start).count();
}

struct Verdict {
    bool pass = false;
    std::string detail;
};

struct Criterion {
    int number;
    const char* name;
    bool soft;
    std::function<Verdict()> run;
};

std::string fmt(const char* format, auto... args)
{
    char buf[512];
    std::snprintf(buf, sizeof buf, format, args...);
    return buf;
}

// ---------------------------------------------------------------- oracles

mpq_class exact(double x)
{
    return mpq_class(x);
}

mpq_class exact(const DoubleDouble& x)
{
    return mpq_class(x.hi()) + mpq_class(x.lo());
}

constexpr mpfr_prec_t oracle_bits = 512;

// RAII mpfr value at the oracle precision
class Mp {
public:
    Mp() { mpfr_init2(v_, oracle_bits); mpfr_set_zero(v_, 1); }
    explicit Mp(double x) : Mp() { mpfr_set_d(v_, x, MPFR_RNDN); }
    explicit Mp(const DoubleDouble& x) : Mp()
    {
        mpfr_set_d(v_, x.hi(), MPFR_RNDN);
        mpfr_add_d(v_, v_, x.lo(), MPFR_RNDN); // exact at this precision
    }
    Mp(const Mp& o) : Mp() { mpfr_set(v_, o.v_, MPFR_RNDN); }
    Mp& operator=(const Mp& o)
    {
        mpfr_set(v_, o.v_, MPFR_RNDN);
        return *this;
    }
    ~Mp() { mpfr_clear(v_); }

    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }

private:
    mpfr_t v_;
};

struct MpC {
    Mp re;
    Mp im;

    MpC() = default;
    template <typename R>
    explicit MpC(const Complex<R>& z) : re(z.re), im(z.im)
    {
    }
    static MpC one()
    {
        MpC c;
        mpfr_set_d(c.re.get(), 1.0, MPFR_RNDN);
        return c;
    }
};

MpC mul(const MpC& a, const MpC& b)
{
    MpC r;
    Mp t;
    mpfr_mul(r.re.get(), a.re.get(), b.re.get(), MPFR_RNDN);
    mpfr_mul(t.get(), a.im.get(), b.im.get(), MPFR_RNDN);
    mpfr_sub(r.re.get(), r.re.get(), t.get(), MPFR_RNDN);
    mpfr_mul(r.im.get(), a.re.get(), b.im.get(), MPFR_RNDN);
    mpfr_mul(t.get(), a.im.get(), b.re.get(), MPFR_RNDN);
    mpfr_add(r.im.get(), r.im.get(), t.get(), MPFR_RNDN);
    return r;
}

// |computed - ref| / |ref| in the complex modulus
template <typename R>
double relative_error(const Complex<R>& computed, const MpC& ref)
{
    const MpC c(computed);
    Mp dre;
    Mp dim;
    Mp num;
    Mp den;
    mpfr_sub(dre.get(), c.re.get(), ref.re.get(), MPFR_RNDN);
    mpfr_sub(dim.get(), c.im.get(), ref.im.get(), MPFR_RNDN);
    mpfr_hypot(num.get(), dre.get(), dim.get(), MPFR_RNDN);
    mpfr_hypot(den.get(), ref.re.get(), ref.im.get(), MPFR_RNDN);
    mpfr_div(num.get(), num.get(), den.get(), MPFR_RNDN);
    return mpfr_get_d(num.get(), MPFR_RNDU);
}

// prod_s x_{var_s}^{a_s - [s == skip]} by repeated multiplication
template <typename R>
MpC brute_power(std::span<const Complex<R>> x, const ExponentVector& e, std::ptrdiff_t skip)
{
    MpC acc = MpC::one();
    const auto factors = e.factors();
    for (std::size_t s = 0; s < factors.size(); ++s) {
        const MpC xv(x[static_cast<std::size_t>(factors[s].var)]);
        const int times = factors[s].exponent - (static_cast<std::ptrdiff_t>(s) == skip ? 1 : 0);
        for (int r = 0; r < times; ++r) {
            acc = mul(acc, xv);
        }
    }
    return acc;
}

// a-weighted derivative of x^e in the variables u and v (-1 for none), binary64
StdC monomial_derivative(const std::vector<StdC>& x, const ExponentVector& e, int u, int v)
{
    StdC value(1.0, 0.0);
    for (const auto& f : e.factors()) {
        int power = f.exponent;
        double weight = 1.0;
        for (int w : {u, v}) {
            if (w == f.var) {
                weight *= power;
                --power;
            }
        }
        if (power < 0 || weight == 0.0) {
            return {0.0, 0.0};
        }
        value *= weight * std::pow(x[static_cast<std::size_t>(f.var)], power);
    }
    for (int w : {u, v}) {
        if (w >= 0) {
            bool present = false;
            for (const auto& f : e.factors()) {
                present = present || f.var == w;
            }
            if (!present) {
                return {0.0, 0.0};
            }
        }
    }
    return value;
}

std::vector<StdC> to_std(std::span<const C> z)
{
    std::vector<StdC> out;
    for (const auto& v : z) {
        out.emplace_back(v.re, v.im);
    }
    return out;
}

// infinity norm of the inverse by Gauss-Jordan with partial pivoting
double inverse_norm_inf(std::vector<StdC> a, int n)
{
    std::vector<StdC> inv(static_cast<std::size_t>(n * n), StdC(0.0, 0.0));
    for (int i = 0; i < n; ++i) {
        inv[static_cast<std::size_t>(i * n + i)] = 1.0;
    }
    auto at = [n](std::vector<StdC>& m, int r, int c) -> StdC& { return m[static_cast<std::size_t>(r * n + c)]; };
    for (int c = 0; c < n; ++c) {
        int piv = c;
        for (int r = c + 1; r < n; ++r) {
            if (std::abs(at(a, r, c)) > std::abs(at(a, piv, c))) {
                piv = r;
            }
        }
        if (std::abs(at(a, piv, c)) == 0.0) {
            return INFINITY;
        }
        for (int k = 0; k < n; ++k) {
            std::swap(at(a, c, k), at(a, piv, k));
            std::swap(at(inv, c, k), at(inv, piv, k));
        }
        const StdC d = at(a, c, c);
        for (int k = 0; k < n; ++k) {
            at(a, c, k) /= d;
            at(inv, c, k) /= d;
        }
        for (int r = 0; r < n; ++r) {
            if (r != c) {
                const StdC f = at(a, r, c);
                for (int k = 0; k < n; ++k) {
                    at(a, r, k) -= f * at(a, c, k);
                    at(inv, r, k) -= f * at(inv, c, k);
                }
            }
        }
    }
    double norm = 0.0;
    for (int r = 0; r < n; ++r) {
        double row = 0.0;
        for (int c = 0; c < n; ++c) {
            row += std::abs(at(inv, r, c));
        }
        norm = std::max(norm, row);
    }
    return norm;
}

template <typename R>
std::vector<Complex<R>> converted(std::span<const C> z)
{
    std::vector<Complex<R>> out;
    for (const auto& v : z) {
        out.push_back(Complex<R>::convert(v));
    }
    return out;
}

template <typename R>
double max_relative_difference(std::span<const Complex<R>> a, std::span<const Complex<R>> b)
{
    double diff = 0.0;
    double scale = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        diff = std::max(diff, to_double(modulus(a[i] - b[i])));
        scale = std::max(scale, to_double(modulus(b[i])));
    }
    return scale > 0.0 ? diff / scale : diff;
}

double random_double(std::mt19937_64& rng, int min_exp, int max_exp)
{
    std::uniform_int_distribution<std::uint64_t> mantissa(0, (std::uint64_t{1} << 52) - 1);
    std::uniform_int_distribution<int> exponent(min_exp, max_exp);
    const double m = 1.0 + std::ldexp(static_cast<double>(mantissa(rng)), -52);
    const double sign = (rng() & 1U) != 0U ? -1.0 : 1.0;
    return sign * std::ldexp(m, exponent(rng));
}

// --------------------------------------------------------------- criteria

Verdict error_free_transforms()
{
    const auto started = clock_type::now();
    std::mt19937_64 rng(101);
    std::uniform_int_distribution<int> gap(-60, 60);
    constexpr int pairs = 1'000'000;
    long failures = 0;
    for (int i = 0; i < pairs; ++i) {
        const double a = random_double(rng, -400, 400);
        // half of the sums use nearby exponents, where cancellation happens
        const double b = (i % 2 == 0) ? random_double(rng, -400, 400)
                                      : std::ldexp(random_double(rng, 0, 0), std::ilogb(a) + gap(rng));
        const auto s = two_sum(a, b);
        if (s.value != a + b || exact(s.value) + exact(s.error) != exact(a) + exact(b)) {
            ++failures;
        }
        const mpq_class product = exact(a) * exact(b);
        for (const auto& p : {two_prod(a, b), two_prod_dekker(a, b), two_prod_fma(a, b)}) {
            if (p.value != a * b || exact(p.value) + exact(p.error) != product) {
                ++failures;
            }
        }
    }
    const double elapsed = seconds_since(started);
    return {failures == 0 && elapsed < 60.0,
            fmt("%d pairs, %ld failures, %.1fs (limit 60s)", pairs, failures, elapsed)};
}

Verdict double_double_accuracy()
{
    const auto started = clock_type::now();
    std::mt19937_64 rng(202);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    auto draw = [&] {
        const double hi = random_double(rng, -100, 100);
        return DoubleDouble::normalized(hi, hi * 0x1p-53 * unit(rng));
    };
    constexpr int operands = 100'000;
    double worst = 0.0;
    auto check = [&](const DoubleDouble& r, const mpq_class& ref) {
        if (ref == 0) {
            worst = std::max(worst, exact(r) == 0 ? 0.0 : INFINITY);
            return;
        }
        const mpq_class rel = abs(exact(r) - ref) / abs(ref);
        worst = std::max(worst, rel.get_d());
    };
    for (int i = 0; i < operands; ++i) {
        const DoubleDouble a = draw();
        DoubleDouble b = draw();
        if (i % 4 == 0) {
            // operands of nearly equal magnitude and opposite sign
            b = DoubleDouble::normalized(-a.hi() * (1.0 + 0x1p-40 * unit(rng)), a.lo() * unit(rng));
        }
        const mpq_class x = exact(a);
        const mpq_class y = exact(b);
        check(a + b, x + y);
        check(a - b, x - y);
        check(a * b, x * y);
        // the quotient is checked against MPFR to exercise a second oracle
        Mp q(a);
        mpfr_div(q.get(), q.get(), Mp(b).get(), MPFR_RNDN);
        Mp diff(a / b);
        mpfr_sub(diff.get(), diff.get(), q.get(), MPFR_RNDN);
        mpfr_div(diff.get(), diff.get(), q.get(), MPFR_RNDN);
        worst = std::max(worst, std::fabs(mpfr_get_d(diff.get(), MPFR_RNDU)));
    }
    const double elapsed = seconds_since(started);
    return {worst <= 0x1p-100 && elapsed < 60.0,
            fmt("%d operand pairs, max relative error 2^%.1f (limit 2^-100), %.1fs", operands, std::log2(worst),
                elapsed)};
}

// complex scalar that counts its multiplications
struct Tally {
    C v;
    static inline long multiplications = 0;

    Tally() = default;
    Tally(double x) : v(x) {} // NOLINT
    explicit Tally(const C& z) : v(z) {}

    friend Tally operator*(const Tally& a, const Tally& b)
    {
        ++multiplications;
        return Tally(a.v * b.v);
    }
};

template <typename R>
Complex<R> random_annulus_point(std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> radius(0.8, 1.25);
    std::uniform_real_distribution<double> angle(0.0, 6.283185307179586);
    const double r = radius(rng);
    const double a = angle(rng);
    Complex<R> z(R(r * std::cos(a)), R(r * std::sin(a)));
    if constexpr (std::is_same_v<R, DoubleDouble>) {
        std::uniform_real_distribution<double> unit(-1.0, 1.0);
        z.re = DoubleDouble::normalized(z.re.hi(), z.re.hi() * 0x1p-54 * unit(rng));
        z.im = DoubleDouble::normalized(z.im.hi(), z.im.hi() * 0x1p-54 * unit(rng));
    }
    return z;
}

ExponentVector random_monomial(std::mt19937_64& rng, int n)
{
    std::uniform_int_distribution<int> count(1, 8);
    std::uniform_int_distribution<int> exponent(1, 10);
    std::vector<int> vars(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
        vars[static_cast<std::size_t>(v)] = v;
    }
    std::shuffle(vars.begin(), vars.end(), rng);
    const int k = count(rng);
    std::vector<int> chosen(vars.begin(), vars.begin() + k);
    std::sort(chosen.begin(), chosen.end());
    std::vector<VarPower> factors;
    for (int v : chosen) {
        factors.push_back({v, exponent(rng)});
    }
    return ExponentVector(std::move(factors), n);
}

// worst error in units of the working precision over all monomials
template <typename R>
double speelpenning_worst_ulps(int monomials, long& count_mismatches)
{
    constexpr int n = 8;
    std::mt19937_64 rng(RealTraits<R>::level == PrecisionLevel::Double ? 303 : 304);
    std::vector<Complex<R>> partials(8);
    std::vector<Complex<R>> gathered(8);
    std::vector<Complex<R>> scratch(8);
    std::vector<Tally> omega(8);
    std::vector<Tally> tally_scratch(8);
    double worst = 0.0;
    for (int i = 0; i < monomials; ++i) {
        const ExponentVector e = random_monomial(rng, n);
        std::vector<Complex<R>> x;
        for (int v = 0; v < n; ++v) {
            x.push_back(random_annulus_point<R>(rng));
        }
        const std::span<const Complex<R>> xs(x);
        const Complex<R> value = eval_monomial_with_partials<Complex<R>>(xs, e, std::span<Complex<R>>(partials), std::span<Complex<R>>(gathered), std::span<Complex<R>>(scratch));
        const std::size_t k = e.size();
        worst = std::max(worst, relative_error(value, brute_power<R>(xs, e, -1)));
        for (std::size_t s = 0; s < k; ++s) {
            worst = std::max(worst, relative_error(partials[s], brute_power<R>(xs, e, static_cast<std::ptrdiff_t>(s))));
        }

        std::vector<Tally> v;
        for (const auto& f : e.factors()) {
            v.emplace_back(C(to_double(x[static_cast<std::size_t>(f.var)].re),
                             to_double(x[static_cast<std::size_t>(f.var)].im)));
        }
        Tally::multiplications = 0;
        suffix_prefix_products<Tally>(v, std::span<Tally>(omega).first(k), tally_scratch);
        const long expected = std::max<long>(0, 3 * static_cast<long>(k) - 6);
        if (Tally::multiplications != expected) {
            ++count_mismatches;
        }
    }
    return worst / RealTraits<R>::epsilon();
}

Verdict speelpenning()
{
    constexpr int monomials = 10'000;
    long mismatches = 0;
    const double d_ulps = speelpenning_worst_ulps<double>(monomials, mismatches);
    const double dd_ulps = speelpenning_worst_ulps<DoubleDouble>(monomials, mismatches);
    return {d_ulps <= 8.0 && dd_ulps <= 8.0 && mismatches == 0,
            fmt("%d monomials per precision, worst %.2f ulps (d) %.2f ulps (dd), limit 8; %ld counter mismatches",
                monomials, d_ulps, dd_ulps, mismatches)};
}

template <typename R>
double old_baseline_discrepancy(const Homotopy<R>& h, std::span<const C> point, double t)
{
    const auto z = converted<R>(point);
    const auto Y = evaluate<R>(h, std::span<const Complex<R>>(z), R(t));
    const auto old = eval_old_baseline<R>(h, std::span<const Complex<R>>(z), R(t));
    return std::max(max_relative_difference<R>(Y.jacobian, old.jacobian),
                    max_relative_difference<R>(Y.residual, old.residual));
}

Verdict jacobian_correctness()
{
    constexpr int systems = 50;
    constexpr int n = 10;
    constexpr double h_fd = 1e-6;
    double worst_d = 0.0;
    double worst_dd = 0.0;
    double worst_fd = 0.0;
    for (int s = 1; s <= systems; ++s) {
        const SupportedSystem f = generate_system({n, 3 * n, 10, 0, static_cast<std::uint64_t>(s)});
        const auto z0 = random_unit_point(n, static_cast<std::uint64_t>(s) + 1);
        const auto point = random_unit_point(n, static_cast<std::uint64_t>(s) + 2);
        const double t = 0.37;
        const auto hd = newton_homotopy<double>(f, std::span<const C>(z0));
        const auto hdd = newton_homotopy<DoubleDouble>(f, std::span<const C>(z0));
        worst_d = std::max(worst_d, old_baseline_discrepancy<double>(hd, point, t));
        worst_dd = std::max(worst_dd, old_baseline_discrepancy<DoubleDouble>(hdd, point, t));

        const auto Y = evaluate<double>(hd, std::span<const C>(point), t);
        for (int v = 0; v < n; ++v) {
            for (const C dir : {C(1.0), C(0.0, 1.0)}) {
                auto plus = point;
                auto minus = point;
                plus[static_cast<std::size_t>(v)] += scale(dir, h_fd);
                minus[static_cast<std::size_t>(v)] -= scale(dir, h_fd);
                const auto yp = evaluate<double>(hd, std::span<const C>(plus), t);
                const auto ym = evaluate<double>(hd, std::span<const C>(minus), t);
                for (int i = 0; i < n; ++i) {
                    // dh/dx along dir equals J * dir for a holomorphic h
                    const C slope = scale(yp.residual[static_cast<std::size_t>(i)] - ym.residual[static_cast<std::size_t>(i)],
                                          1.0 / (2.0 * h_fd));
                    const C derivative = Y.jac(i, v) * dir;
                    const double scale_ref = to_double(modulus(derivative));
                    worst_fd = std::max(worst_fd, to_double(modulus(slope - derivative)) / std::max(scale_ref, 1e-300));
                }
            }
        }
    }
    const bool pass = worst_d <= evaluator_agreement_tolerance(PrecisionLevel::Double) &&
                      worst_dd <= evaluator_agreement_tolerance(PrecisionLevel::DoubleDouble) && worst_fd <= 1e-5;
    return {pass, fmt("%d systems, baseline difference %.2e (d, limit 1e-12) %.2e (dd, limit 1e-26), "
                      "finite differences %.2e (limit 1e-5)",
                      systems, worst_d, worst_dd, worst_fd)};
}

struct RootedSystem {
    SupportedSystem f;
    std::vector<C> root;
    double inverse_norm = 0.0;
    double hessian = 0.0; // max_i sum_{u,v} |d^2 h_i / dx_u dx_v| at the root
};

// exact check that the binary64 root annihilates h(., 0) up to the rounding of f(z0)
template <typename R>
bool root_verified(const Homotopy<R>& h, std::span<const C> root, double relative_limit)
{
    const int n = h.dimension();
    const std::size_t m = h.monomial_count();
    std::vector<mpq_class> re;
    std::vector<mpq_class> im;
    for (const auto& v : root) {
        re.push_back(exact(v.re));
        im.push_back(exact(v.im));
    }
    std::vector<mpq_class> mre(m);
    std::vector<mpq_class> mim(m);
    for (std::size_t j = 0; j < m; ++j) {
        mpq_class a = 1;
        mpq_class b = 0;
        for (const auto& f : h.support()[j].factors()) {
            for (int r = 0; r < f.exponent; ++r) {
                const mpq_class na = a * re[static_cast<std::size_t>(f.var)] - b * im[static_cast<std::size_t>(f.var)];
                b = a * im[static_cast<std::size_t>(f.var)] + b * re[static_cast<std::size_t>(f.var)];
                a = na;
            }
        }
        mre[j] = a;
        mim[j] = b;
    }
    const auto coeffs = h.start_coefficients();
    for (int i = 0; i < n; ++i) {
        mpq_class sr = 0;
        mpq_class si = 0;
        double magnitude = 0.0;
        for (std::size_t j = 0; j < m; ++j) {
            const auto& c = coeffs[static_cast<std::size_t>(i) * m + j];
            const mpq_class cr = exact(c.re);
            const mpq_class ci = exact(c.im);
            sr += cr * mre[j] - ci * mim[j];
            si += cr * mim[j] + ci * mre[j];
            magnitude += to_double(modulus(c)) * std::hypot(mre[j].get_d(), mim[j].get_d());
        }
        const double residual = std::hypot(sr.get_d(), si.get_d());
        if (!(residual <= relative_limit * magnitude)) {
            return false;
        }
    }
    return true;
}

template <typename R>
double observed_constant(const std::vector<R>& history, double floor, int& informative)
{
    double c = 0.0;
    for (std::size_t i = 0; i + 1 < history.size(); ++i) {
        const double r0 = to_double(history[i]);
        const double r1 = to_double(history[i + 1]);
        if (r1 > floor && r0 > 0.0) {
            c = std::max(c, r1 / (r0 * r0));
            ++informative;
        }
    }
    return c;
}

Verdict newton_convergence()
{
    constexpr int wanted = 20;
    constexpr double inverse_limit = 50.0; // well-conditioned: ||J^-1||_inf at the root
    std::vector<RootedSystem> systems;
    int tried = 0;
    for (std::uint64_t seed = 1; systems.size() < wanted && seed < 1000; ++seed) {
        ++tried;
        const int n = 4 + static_cast<int>(seed % 7);
        RootedSystem rs{generate_system({n, 3 * n, 6, 0, seed}), random_point(n, seed + 500)};
        const auto x = to_std(rs.root);
        const auto& support = rs.f.support();
        std::vector<StdC> jac(static_cast<std::size_t>(n * n), StdC(0.0, 0.0));
        for (int i = 0; i < n; ++i) {
            double hess = 0.0;
            for (std::size_t j = 0; j < support.size(); ++j) {
                const auto& c = rs.f.coefficient(i, j);
                const StdC cij(c.re, c.im);
                for (int u = 0; u < n; ++u) {
                    jac[static_cast<std::size_t>(i * n + u)] += cij * monomial_derivative(x, support[j], u, -1);
                }
            }
            for (int u = 0; u < n; ++u) {
                for (int v = 0; v < n; ++v) {
                    StdC huv(0.0, 0.0);
                    for (std::size_t j = 0; j < support.size(); ++j) {
                        const auto& c = rs.f.coefficient(i, j);
                        huv += StdC(c.re, c.im) * monomial_derivative(x, support[j], u, v);
                    }
                    hess += std::abs(huv);
                }
            }
            rs.hessian = std::max(rs.hessian, hess);
        }
        rs.inverse_norm = inverse_norm_inf(jac, n);
        if (rs.inverse_norm <= inverse_limit) {
            systems.push_back(std::move(rs));
        }
    }
    if (systems.size() < wanted) {
        return {false, fmt("only %zu well-conditioned systems in %d seeds", systems.size(), tried)};
    }

    WorkerTeam team(1);
    bool pass = true;
    int unverified = 0;
    int slow = 0;
    int uninformative = 0;
    double worst_ratio = 0.0;
    double final_d = 0.0;
    double final_dd = 0.0;
    std::mt19937_64 rng(505);
    std::uniform_real_distribution<double> angle(0.0, 6.283185307179586);
    for (const auto& rs : systems) {
        std::vector<C> start = rs.root;
        for (auto& v : start) {
            const double a = angle(rng);
            v += C(1e-3 * std::cos(a), 1e-3 * std::sin(a));
        }
        const double bound = 10.0 * rs.inverse_norm * rs.hessian;

        const auto hd = newton_homotopy<double>(rs.f, std::span<const C>(rs.root));
        const auto hdd = newton_homotopy<DoubleDouble>(rs.f, std::span<const C>(rs.root));
        if (!root_verified(hd, rs.root, 1e-14) || !root_verified(hdd, rs.root, 1e-29)) {
            ++unverified;
            pass = false;
        }

        const auto out_d = newton_correct<double>(hd, std::span<const C>(start), 0.0, NewtonConfig<double>{1e-14, 8}, team);
        const auto zdd = converted<DoubleDouble>(start);
        const auto out_dd = newton_correct<DoubleDouble>(hdd, std::span<const CD>(zdd), DoubleDouble(0.0),
                                                         NewtonConfig<DoubleDouble>{DoubleDouble(1e-29), 10}, team);
        int informative = 0;
        const double c_d = observed_constant(out_d.residual_history, 1e3 * 0x1p-52, informative);
        const double c_dd = observed_constant(out_dd.residual_history, 1e3 * 0x1p-104, informative);
        if (informative == 0) {
            ++uninformative;
            pass = false;
        }
        const double ratio = std::max(c_d, c_dd) / bound;
        worst_ratio = std::max(worst_ratio, ratio);
        if (ratio > 1.0) {
            ++slow;
            pass = false;
        }
        final_d = std::max(final_d, out_d.residual);
        final_dd = std::max(final_dd, to_double(out_dd.residual));
    }
    pass = pass && final_d < 1e-12 && final_dd < 1e-26;
    return {pass, fmt("%d systems (%d seeds tried), max C_obs/(10 ||J^-1|| max|H|) = %.2e, %d above bound, "
                      "%d unverified roots, %d without data; final residual %.2e (d) %.2e (dd)",
                      wanted, tried, worst_ratio, slow, unverified, uninformative, final_d, final_dd)};
}

template <typename R>
Homotopy<R> square_root_path()
{
    Support s(1, {ExponentVector({{0, 2}}, 1), ExponentVector({}, 1)});
    const SupportedSystem f(s, {C(1.0), C(-4.0)});
    const std::vector<Complex<R>> z0{Complex<R>(R(1.0))};
    return newton_homotopy<R>(f, std::span<const Complex<R>>(z0));
}

Verdict analytic_path()
{
    const auto started = clock_type::now();
    const auto rd = track_path(square_root_path<double>(), TrackerConfig<double>{});
    const auto rdd = track_path(square_root_path<DoubleDouble>(), TrackerConfig<DoubleDouble>{});
    const double elapsed = seconds_since(started);
    const double err_d = modulus(rd.endpoint[0] - C(2.0));
    const double err_dd = to_double(modulus(rdd.endpoint[0] - CD(DoubleDouble(2.0))));
    const bool pass = !rd.fail && !rdd.fail && err_d <= 1e-10 && err_dd <= 1e-24 && elapsed < 1.0;
    return {pass, fmt("|z-2| = %.2e (d, limit 1e-10) %.2e (dd, limit 1e-24), fail=%d/%d, %.3fs (limit 1s)", err_d,
                      err_dd, static_cast<int>(rd.fail), static_cast<int>(rdd.fail), elapsed)};
}

struct Trace {
    TrackResult<double> result;
    std::vector<double> lambdas;
    std::vector<double> times;
};

bool same_trace(const Trace& a, const Trace& b)
{
    auto same_doubles = [](const std::vector<double>& x, const std::vector<double>& y) {
        if (x.size() != y.size()) {
            return false;
        }
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (!same_bits(x[i], y[i])) {
                return false;
            }
        }
        return true;
    };
    const auto& ra = a.result;
    const auto& rb = b.result;
    return ra.fail == rb.fail && same_bits(ra.reached_t, rb.reached_t) &&
           ra.stats.total_corrections == rb.stats.total_corrections &&
           ra.stats.successful_corrections == rb.stats.successful_corrections &&
           ra.stats.accepted_steps == rb.stats.accepted_steps &&
           same_bits<double>(std::span<const C>(ra.endpoint), std::span<const C>(rb.endpoint)) &&
           same_doubles(a.lambdas, b.lambdas) && same_doubles(a.times, b.times);
}

Verdict determinism()
{
    const auto started = clock_type::now();
    constexpr int n = 20;
    const SupportedSystem f = generate_system({n, 3 * n, 10, 0, 7});
    const auto z0 = random_unit_point(n, 1007);
    const auto h = newton_homotopy<double>(f, std::span<const C>(z0));
    std::vector<Trace> traces;
    for (int p : {1, 2, 4, 8}) {
        Trace trace;
        TrackerConfig<double> cfg;
        cfg.workers = p;
        cfg.observer = [&trace](const TrackEvent<double>& e) {
            trace.lambdas.push_back(e.lambda);
            trace.times.push_back(e.t);
        };
        trace.result = track_path(h, cfg);
        traces.push_back(std::move(trace));
    }
    bool same = true;
    for (std::size_t i = 1; i < traces.size(); ++i) {
        same = same && same_trace(traces[0], traces[i]);
    }
    const double elapsed = seconds_since(started);
    const auto& r = traces[0].result;
    return {same && elapsed < 300.0,
            fmt("p in {1,2,4,8}: %s; %llu corrections, %zu steps, fail=%d, %.1fs (limit 300s)",
                same ? "identical" : "DIFFERENT", static_cast<unsigned long long>(r.stats.total_corrections),
                traces[0].lambdas.size(), static_cast<int>(r.fail), elapsed)};
}

Verdict predictor_gain()
{
    const auto started = clock_type::now();
    constexpr int n = 10;
    constexpr std::uint64_t budget = 1'300'000;
    std::uint64_t quadratic_total = 0;
    std::uint64_t secant_total = 0;
    bool quadratic_ok = true;
    std::string per_system;
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        const SupportedSystem f = generate_system({n, 3 * n, 10, 0, seed});
        const auto z0 = random_unit_point(n, seed + 1000);
        const auto h = newton_homotopy<DoubleDouble>(f, std::span<const C>(z0));
        std::uint64_t counts[2] = {0, 0};
        bool exhausted = false;
        int index = 0;
        for (PredictorKind kind : {PredictorKind::Quadratic, PredictorKind::Secant}) {
            TrackerConfig<DoubleDouble> cfg;
            cfg.predictor = kind;
            cfg.newton.tolerance = DoubleDouble(1e-20);
            cfg.newton.max_iterations = 1;
            cfg.min_step = 1e-14;
            cfg.max_corrections = budget;
            const auto r = track_path(h, cfg);
            counts[index++] = r.stats.total_corrections;
            if (kind == PredictorKind::Quadratic) {
                quadratic_ok = quadratic_ok && !r.fail;
            } else if (r.stats.total_corrections > budget) {
                exhausted = true;
            }
        }
        quadratic_total += counts[0];
        secant_total += counts[1];
        per_system += fmt(" %llu/%llu%s", static_cast<unsigned long long>(counts[0]),
                          static_cast<unsigned long long>(counts[1]), exhausted ? " (budget exhausted)" : "");
    }
    const double elapsed = seconds_since(started);
    const double ratio = static_cast<double>(quadratic_total) / static_cast<double>(secant_total);
    return {quadratic_ok && ratio <= 1.0 / 20.0 && elapsed <= 1800.0,
            fmt("quadratic/secant corrections%s; ratio %.4f (limit 0.05), quadratic reached t=1: %s, %.0fs",
                per_system.c_str(), ratio, quadratic_ok ? "yes" : "no", elapsed)};
}

Verdict quality_up()
{
    const int cores = cores_for_fixed_time(8.076, 4.818, 8);
    const auto q = quality_up_factor(8, cores);
    return {cores == 14 && std::abs(q.factor - 1.53846) <= 1e-3,
            fmt("cores needed %d (expected 14), factor %.5f (expected 1.538 within 1e-3)", cores, q.factor)};
}

Verdict evaluation_speedup()
{
    std::string detail;
    double dd_ratio = 0.0;
    for (auto precision : {PrecisionLevel::DoubleDouble, PrecisionLevel::Double}) {
        EvalBenchConfig cfg;
        cfg.spec = {20, 20, 10, 0, 1};
        cfg.precision = precision;
        const auto row = bench_eval_old_vs_new(cfg);
        if (precision == PrecisionLevel::DoubleDouble) {
            dd_ratio = row.ratio;
        }
        detail += fmt("%s ratio %.2f ", std::string(to_string(precision)).c_str(), row.ratio);
    }
    return {dd_ratio >= 3.0, detail + "(limit 3 on dd)"};
}

Verdict parallel_scaling(bool& hard_ok)
{
    NewtonBenchConfig cfg;
    cfg.spec = {40, 200, 40, 0, 1};
    cfg.iterations = 200;
    cfg.precision = PrecisionLevel::DoubleDouble;
    NewtonBenchReport report;
    try {
        report = bench_newton(cfg);
    } catch (const VerificationError& e) {
        hard_ok = false;
        return {false, std::string("cross-team bitwise check failed: ") + e.what()};
    }
    hard_ok = true;
    std::string detail = "Newton steps bitwise equal for p in {1,2,4,8}; speedups";
    double four = 0.0;
    for (const auto& row : report.rows) {
        detail += fmt(" p=%d:%.2f", row.workers, row.speedup);
        if (row.workers == 4) {
            four = row.speedup;
        }
    }
    detail += "; hardware " + hardware_description();
    if (hardware_cores() < 4) {
        return {true, detail + "; speedup threshold not applicable below 4 cores"};
    }
    return {four >= 2.0, detail + fmt("; 4-worker speedup %.2f (limit 2.0)", four)};
}

} // namespace

// optional arguments select criteria by number
int main(int argc, char** argv)
{
    std::vector<int> selected;
    for (int i = 1; i < argc; ++i) {
        selected.push_back(std::atoi(argv[i]));
    }
    check_rounding_mode();
    bool scaling_hard_ok = true;
    const std::vector<Criterion> criteria{
        {1, "error-free transforms", false, error_free_transforms},
        {2, "double-double accuracy", false, double_double_accuracy},
        {3, "shifted monomials", false, speelpenning},
        {4, "Jacobian correctness", false, jacobian_correctness},
        {5, "Newton convergence", false, newton_convergence},
        {6, "analytic path", false, analytic_path},
        {7, "worker invariance", false, determinism},
        {8, "predictor gain", false, predictor_gain},
        {9, "quality-up arithmetic", false, quality_up},
        {10, "evaluation speedup", true, evaluation_speedup},
        {11, "parallel scaling", true, [&] { return parallel_scaling(scaling_hard_ok); }},
    };
    int hard_failures = 0;
    for (const auto& c : criteria) {
        if (!selected.empty() && std::find(selected.begin(), selected.end(), c.number) == selected.end()) {
            continue;
        }
        Verdict v;
        try {
            v = c.run();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        if (!v.pass && !c.soft) {
            ++hard_failures;
        }
        std::printf("%s %2d %s%s: %s\n", v.pass ? "PASS" : "FAIL", c.number, c.name, c.soft ? " (soft)" : "",
                    v.detail.c_str());
        std::fflush(stdout);
    }
    if (!scaling_hard_ok) {
        ++hard_failures;
    }
    std::printf("%d hard criteria failed\n", hard_failures);
    return hard_failures == 0 ? 0 : 1;
}
