#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "zetaline/common.hpp"
#include "zetaline/gamma.hpp"

namespace zetaline {

/// Knobs for the critical-line evaluation kernel.
///
/// Heights at or above rs_min_t use the Riemann-Siegel formula with
/// rs_corrections correction terms; below it the Euler-Maclaurin path is
/// used (slower there, but with a much smaller certified bound). The
/// default crossover keeps the declared |Z| error below 1e-6 at every
/// height.
struct EvalConfig {
    double rs_min_t = 250.0;
    int em_terms = 64;
    int rs_corrections = 2;

    void validate() const {
        detail::require(rs_min_t > 0.0, "EvalConfig: rs_min_t must be > 0");
        detail::require(em_terms >= 10, "EvalConfig: em_terms must be >= 10");
        detail::require(rs_corrections >= 0 && rs_corrections <= 4,
                        "EvalConfig: rs_corrections must be in [0, 4]");
    }
};

/// One evaluation at 1/2 + it: theta(t), Z(t), zeta(1/2+it), and an
/// absolute bound on the error of z (equivalently of |zeta|).
struct ZetaSample {
    double t = 0.0;
    double theta = 0.0;
    double z = 0.0;
    double zeta_re = 0.0;
    double zeta_im = 0.0;
    double err_bound = 0.0;
};

/// Euler-Maclaurin result: zeta(sigma + it) plus an absolute error bound
/// from the first omitted Bernoulli term.
struct EmEval {
    std::complex<double> value;
    double err_bound = 0.0;
};

double theta(double t);

namespace detail {

inline void sin_cos(double x, double& s, double& c) {
#if defined(__GNUC__)
    __builtin_sincos(x, &s, &c);
#else
    s = std::sin(x);
    c = std::cos(x);
#endif
}

inline double theta_asymptotic(double t) {
    const double lt = std::log(t / kTwoPi);
    const double t2 = t * t;
    return 0.5 * t * lt - 0.5 * t - kPi / 8.0 + 1.0 / (48.0 * t) +
           7.0 / (5760.0 * t * t2) + 31.0 / (80640.0 * t * t2 * t2);
}

inline double theta_loggamma(double t) {
    const std::complex<double> lg = log_gamma({0.25, 0.5 * t});
    return lg.imag() - 0.5 * t * std::log(kPi);
}

// ---------------------------------------------------------------------
// Riemann-Siegel correction terms C_0..C_4.
//
// Polynomials in z = 2p - 1, p the fractional part of sqrt(t/2pi).
// Even-order terms are even in z, odd-order odd; the tables store the
// nonzero coefficients, i.e. powers of z^2 (times z for odd terms).
// Computed with mpmath at 60-digit precision by fitting the main-sum
// remainder at fixed fractional parts against exact Z(t).
// ---------------------------------------------------------------------

inline constexpr double kC0[20] = {
    3.82683432365089782e-01, 4.37240468077520428e-01, 1.32376575480343511e-01,
    -1.36050260476741885e-02, -1.35676219701035810e-02, -1.62372532314446530e-03,
    2.97053537333796900e-04, 7.94330087952146887e-05, 4.65561246145048530e-07,
    -1.43272516309552962e-06, -1.03548471123049386e-07, 1.23579270835976690e-08,
    1.78810838648323894e-09, -3.39141453205504438e-11, -1.63266315705992779e-11,
    -3.78513957680507271e-13, 9.32773082148360438e-14, 5.21943548582833500e-15,
    -3.33657637105556249e-16, -3.47106092523785694e-17,
};

inline constexpr double kC1[20] = {
    -2.68251026283753483e-02, 1.37847734263518533e-02, 3.84912504822350829e-02,
    9.87106629906207671e-03, -3.31075976085840442e-03, -1.46478085779541516e-03,
    -1.32079406248769630e-05, 5.92274870184714096e-05, 5.98024258537345147e-06,
    -9.64132245616997204e-07, -1.83347337227083934e-07, 4.46708756252402916e-09,
    2.70963508266705422e-09, 7.78528855698324449e-11, -2.34376244953926337e-11,
    -1.58301910675372789e-12, 1.21201082134013229e-13, 1.45826905077439740e-14,
    -2.87416389198558098e-16, -8.66770075198515434e-17,
};

inline constexpr double kC2[22] = {
    5.18854283029316840e-03, 3.09465838806347439e-04, -1.13359410782293731e-02,
    2.23304574195814457e-03, 5.19663740886232989e-03, 3.43991440762083333e-04,
    -5.91064842747058314e-04, -1.02299725479358504e-04, 2.08883922169922359e-05,
    5.92766549309936384e-06, -1.64238383636340123e-07, -1.51611996969622921e-07,
    -5.90780380273831957e-09, 2.09115170434574460e-09, 1.78156132518565211e-10,
    -1.61635925818582151e-11, -2.38119567358226243e-12, 5.43865725452379647e-14,
    1.95020145965088131e-14, 3.44826274391830648e-16, -1.46181278615314925e-16,
    2.14103896916681939e-18,
};

inline constexpr double kC3[22] = {
    -1.33971609071945681e-03, 3.74421513637939385e-03, -1.33031789193214698e-03,
    -2.26546607654717859e-03, 9.54849999850673195e-04, 6.01003845896360138e-04,
    -1.01288582867765985e-04, -6.86573344929983123e-05, 5.98536679153325810e-07,
    3.33165985124302387e-06, 2.19192891011394973e-07, -7.89088424138882944e-08,
    -9.41468519387404349e-09, 9.57011855779476154e-10, 1.87630985198647472e-10,
    -4.43732525867973796e-12, -2.24320466839677171e-12, -3.58502718877054939e-14,
    1.73801200004930835e-14, 9.11143733868631633e-16, -1.28742546805675872e-16,
    -1.12147724677914303e-18,
};

inline constexpr double kC4[22] = {
    4.64833893617647707e-04, -1.00566073653412494e-03, 2.40448565737437839e-04,
    1.02830861496996918e-03, -7.65786107175271983e-04, -2.03652868031081741e-04,
    2.32122904910790829e-04, 3.26021442438763416e-05, -2.55790625179953788e-05,
    -4.10746443890495139e-06, 1.17811136411102689e-06, 2.44565613959583449e-07,
    -2.39158240695926412e-08, -7.50521568164579789e-09, 1.33125288714666424e-10,
    1.34402902852318092e-10, 3.51736596491945773e-12, -1.52216488829148850e-12,
    -8.72166541785887335e-14, 1.02655953174943169e-14, 1.36867846551740486e-15,
    -1.21802326224004521e-16,
};

// max |C_j(p)| over p in [0,1]; kCjMax[5] and [6] are headroom values for
// orders beyond the fitted tables, used only inside the error bound.
inline constexpr double kCjMax[7] = {0.9232,     0.030451,   0.0051907,
                                     0.00031631, 0.00046356, 7.5335e-5,
                                     1.0e-4};

// Lowest height at which the correction expansion has been validated;
// below it the Euler-Maclaurin path is always taken.
inline constexpr double kRsFloor = 10.0;

template <std::size_t N>
inline double eval_even_poly(const double (&c)[N], double zsq) {
    double r = c[N - 1];
    for (std::size_t i = N - 1; i-- > 0;) r = r * zsq + c[i];
    return r;
}

// Per-process tables driving the Riemann-Siegel main sum: 1/sqrt(n),
// log n, and the smallest prime factor, so that exp(-i t log n) for
// composite n is a single complex multiply instead of a sincos call.
struct MainSumTables {
    static constexpr int kMaxN = 1024;  // covers t up to ~6.5e6
    std::array<double, kMaxN + 1> inv_sqrt{};
    std::array<double, kMaxN + 1> log_n{};
    std::array<int, kMaxN + 1> spf{};

    MainSumTables() {
        for (int n = 1; n <= kMaxN; ++n) {
            inv_sqrt[n] = 1.0 / std::sqrt(static_cast<double>(n));
            log_n[n] = std::log(static_cast<double>(n));
            spf[n] = n;
        }
        for (int p = 2; p * p <= kMaxN; ++p) {
            if (spf[p] != p) continue;
            for (int m = p * p; m <= kMaxN; m += p)
                if (spf[m] == m) spf[m] = p;
        }
    }

    static const MainSumTables& get() {
        static const MainSumTables t;
        return t;
    }
};

// 2 * sum_{n<=N} n^{-1/2} cos(theta - t log n)
inline double rs_main_sum(double t, double th, int n_terms) {
    const MainSumTables& tab = MainSumTables::get();
    const double ct = std::cos(th), st = std::sin(th);
    double acc_c = 0.0, acc_s = 0.0;  // sums of w_n cos(t log n), w_n sin(..)
    std::array<double, MainSumTables::kMaxN + 1> cs, sn;
    cs[1] = 1.0;
    sn[1] = 0.0;
    for (int n = 2; n <= n_terms; ++n) {
        const int p = tab.spf[n];
        if (p == n) {
            sin_cos(t * tab.log_n[n], sn[n], cs[n]);
        } else {
            const int m = n / p;
            cs[n] = cs[p] * cs[m] - sn[p] * sn[m];
            sn[n] = sn[p] * cs[m] + cs[p] * sn[m];
        }
        acc_c += tab.inv_sqrt[n] * cs[n];
        acc_s += tab.inv_sqrt[n] * sn[n];
    }
    acc_c += 1.0;  // n = 1 term
    // cos(theta - t log n) = cos(theta) cs_n + sin(theta) sn_n
    return 2.0 * (ct * acc_c + st * acc_s);
}

inline double rs_correction(double p_frac, double x, int order) {
    const double z = 2.0 * p_frac - 1.0;
    const double zsq = z * z;
    double corr = eval_even_poly(kC0, zsq);
    if (order >= 1) corr += x * z * eval_even_poly(kC1, zsq);
    if (order >= 2) corr += x * x * eval_even_poly(kC2, zsq);
    if (order >= 3) corr += x * x * x * z * eval_even_poly(kC3, zsq);
    if (order >= 4) corr += x * x * x * x * eval_even_poly(kC4, zsq);
    return corr;
}

// Declared bound for the Riemann-Siegel value: envelope of the first two
// omitted correction terms (x = (t/2pi)^{-1/2}, with the (t/2pi)^{-1/4}
// prefactor folded in) plus the float64 phase-rounding envelope, which
// dominates above t ~ 3e5. Both validated against exact values over
// t in [10, 1.2e6].
inline double rs_err_bound(double t, int order) {
    const double tp = t / kTwoPi;
    const double x = 1.0 / std::sqrt(tp);
    const double series = 1.25 *
                          (kCjMax[order + 1] + kCjMax[order + 2] * x) *
                          std::pow(x, order + 1.5);
    const double rounding = 3.0 * kEps * t * std::pow(tp, 0.25);
    return series + rounding;
}

// B_{2k} / (2k)! for k = 1..13 (exact rationals rounded to double).
inline constexpr double kBernOverFact[14] = {
    0.0,
    8.3333333333333333e-02,   // B2/2!   = 1/12
    -1.3888888888888889e-03,  // B4/4!   = -1/720
    3.3068783068783069e-05,   // B6/6!   = 1/30240
    -8.2671957671957672e-07,  // B8/8!   = -1/1209600
    2.0876756987868099e-08,   // B10/10! = 1/47900160
    -5.2841901386874932e-10,  // B12/12! = -691/1307674368000
    1.3382536530684679e-11,   // B14/14!
    -3.3896802963225829e-13,  // B16/16!
    8.5860620562778446e-15,   // B18/18!
    -2.1748686985580619e-16,  // B20/20!
    5.5090028283602295e-18,   // B22/22!
    -1.3954464685812523e-19,  // B24/24!
    3.5347070396294675e-21,   // B26/26!
};

// Euler-Maclaurin core: zeta(s) from n_terms leading terms, with the
// Bernoulli tail truncated at the running-minimum term. No domain checks.
inline EmEval em_core(double sigma, double t, int n_terms) {
    const std::complex<double> s{sigma, t};
    const double n_real = static_cast<double>(n_terms);

    const MainSumTables& tab = MainSumTables::get();
    const bool on_half_line = sigma == 0.5;
    std::complex<double> sum = 0.0;
    for (int n = 1; n <= n_terms; ++n) {
        const bool tabulated = n <= MainSumTables::kMaxN;
        const double ln = tabulated ? tab.log_n[n]
                                    : std::log(static_cast<double>(n));
        const double w =
            on_half_line
                ? (tabulated ? tab.inv_sqrt[n]
                             : 1.0 / std::sqrt(static_cast<double>(n)))
                : std::pow(static_cast<double>(n), -sigma);
        double si, co;
        sin_cos(t * ln, si, co);
        sum += std::complex<double>(w * co, -w * si);
    }

    const double ln_n = std::log(n_real);
    const std::complex<double> n_pow_ms =
        std::exp(std::complex<double>(-sigma * ln_n, -t * ln_n));  // N^{-s}
    sum += n_pow_ms * n_real / (s - 1.0);  // N^{1-s}/(s-1)
    sum -= 0.5 * n_pow_ms;  // main sum counts n = N fully

    // Bernoulli tail: T_k = B_{2k}/(2k)! * s(s+1)..(s+2k-2) * N^{1-s-2k}.
    // Terms are added while they shrink; the remainder is bounded by the
    // first omitted term scaled by |s+2q+1|/(sigma+2q+1).
    std::complex<double> poch = s;                     // s .. s+2k-2
    std::complex<double> scale = n_pow_ms / n_real;    // N^{-s-2k+1}
    double prev_mag = std::abs(n_pow_ms);              // |T_0| stand-in
    double bound = prev_mag / 2.0;                     // fallback: q = 0
    for (int k = 1; k < 14; ++k) {
        const std::complex<double> term = kBernOverFact[k] * poch * scale;
        const double mag = std::abs(term);
        const double factor =
            std::abs(s + static_cast<double>(2 * k - 1)) / (sigma + 2 * k - 1);
        if (mag >= prev_mag) {
            bound = mag * factor;  // omitted-term bound, divergence onset
            break;
        }
        sum += term;
        prev_mag = mag;
        bound = mag * factor;  // stand-in until the next term is seen
        if (mag < 1e-19) break;
        poch *= (s + static_cast<double>(2 * k - 1)) *
                (s + static_cast<double>(2 * k));
        scale /= n_real * n_real;
    }

    // float64 noise: sequential accumulation plus phase rounding
    const double rounding =
        kEps * (2.0 + 1.5 * std::sqrt(n_real) * std::log(n_real + 1.0) +
                std::abs(t) * ln_n * std::sqrt(ln_n + 2.0));
    return {sum, bound + rounding};
}

// Terms needed for the Bernoulli tail of em_core to converge well at
// height t (the turning point of the tail sits near N ~ t/2pi).
inline int em_auto_terms(double t, int at_least) {
    const int need = static_cast<int>(std::ceil(0.45 * std::abs(t))) + 24;
    return std::max(at_least, need);
}

}  // namespace detail

/// Riemann-Siegel theta: Im log Gamma(1/4 + it/2) - (t/2) log pi.
/// Asymptotic series for |t| >= 10, direct log-Gamma below; odd in t.
inline double theta(double t) {
    detail::require(detail::finite(t), "theta: t must be finite");
    if (t == 0.0) return 0.0;
    const double a = std::abs(t);
    const double v =
        a >= 10.0 ? detail::theta_asymptotic(a) : detail::theta_loggamma(a);
    return t > 0 ? v : -v;
}

/// zeta(sigma + it) by Euler-Maclaurin summation with `terms` leading
/// terms. Cross-check oracle; the stated window keeps the tail bound
/// meaningful.
inline EmEval em_zeta(double sigma, double t, int terms) {
    detail::require(sigma >= 0.4 && sigma <= 2.1,
                    "em_zeta: sigma must lie in [0.4, 2.1]");
    detail::require(terms >= 10, "em_zeta: terms must be >= 10");
    detail::require(detail::finite(t) && std::abs(t) <= 10.0 * terms,
                    "em_zeta: |t| must be <= 10 * terms");
    if (t < 0) {
        EmEval r = em_zeta(sigma, -t, terms);
        return {std::conj(r.value), r.err_bound};
    }
    return detail::em_core(sigma, t, terms);
}

/// Z(t) plus the derived zeta(1/2+it) sample. Riemann-Siegel above the
/// crossover, Euler-Maclaurin below; err_bound is the declared absolute
/// bound for the chosen path.
inline ZetaSample z_function(double t, const EvalConfig& cfg = {}) {
    cfg.validate();
    detail::require(detail::finite(t) && t >= 0.0,
                    "z_function: t must be finite and >= 0");

    ZetaSample out;
    out.t = t;
    out.theta = theta(t);
    const double ct = std::cos(out.theta), st = std::sin(out.theta);

    if (t >= cfg.rs_min_t && t >= detail::kRsFloor) {
        const double tp = t / kTwoPi;
        const double root = std::sqrt(tp);
        const int n_terms = static_cast<int>(root);
        detail::require(n_terms <= detail::MainSumTables::kMaxN,
                        "z_function: t beyond supported range (~6.5e6)");
        const double p_frac = root - n_terms;
        const double x = 1.0 / root;

        double z = detail::rs_main_sum(t, out.theta, n_terms);
        const double corr = detail::rs_correction(p_frac, x, cfg.rs_corrections);
        const double sign = (n_terms % 2 == 1) ? 1.0 : -1.0;
        z += sign * std::pow(tp, -0.25) * corr;

        out.z = z;
        out.err_bound = detail::rs_err_bound(t, cfg.rs_corrections);
        out.zeta_re = z * ct;
        out.zeta_im = -z * st;
    } else {
        const EmEval em =
            detail::em_core(0.5, t, detail::em_auto_terms(t, cfg.em_terms));
        // Z = e^{i theta} zeta(1/2 + it); the imaginary part is rounding
        // residue and is dropped.
        out.z = ct * em.value.real() - st * em.value.imag();
        out.zeta_re = em.value.real();
        out.zeta_im = em.value.imag();
        out.err_bound =
            em.err_bound + (std::abs(out.z) + 1.0) * 4.0 * kEps;
    }
    if (out.zeta_im == 0.0) out.zeta_im = 0.0;  // normalize -0
    return out;
}

/// zeta(1/2 + it) for any finite t, via Z(|t|) e^{-i theta(|t|)} and
/// Schwarz reflection for t < 0.
inline ZetaSample zeta_half(double t, const EvalConfig& cfg = {}) {
    detail::require(detail::finite(t), "zeta_half: t must be finite");
    ZetaSample s = z_function(std::abs(t), cfg);
    if (t < 0) {
        s.t = t;
        s.theta = -s.theta;
        s.zeta_im = -s.zeta_im;
        if (s.zeta_im == 0.0) s.zeta_im = 0.0;
    }
    return s;
}

}  // namespace zetaline
