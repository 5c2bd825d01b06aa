#pragma once

// Independent reference computations for the test suites. Nothing here calls
// into the library's evaluation paths.

#include <cmath>
#include <cstddef>
#include <vector>

namespace txpower::oracle {

struct Point {
    double frequency;
    double metric;
};

/// O(n^2) dominance check: i survives iff no j has f_j >= f_i and m_j >= m_i
/// with one strict, and no earlier j carries the identical (f, m) pair.
inline std::vector<bool> pareto_upper_brute_force(const std::vector<Point>& pts) {
    std::vector<bool> keep(pts.size(), true);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = 0; j < pts.size() && keep[i]; ++j) {
            if (i == j) continue;
            const bool ge = pts[j].frequency >= pts[i].frequency && pts[j].metric >= pts[i].metric;
            const bool strict = pts[j].frequency > pts[i].frequency || pts[j].metric > pts[i].metric;
            if (ge && strict) keep[i] = false;
            if (!strict && ge && j < i) keep[i] = false;  // identical pair seen earlier
        }
    }
    return keep;
}

inline long double dbm_to_mw(long double dbm) { return std::pow(10.0L, dbm / 10.0L); }

inline long double exp_fit(long double a, long double b, long double f) { return a * std::exp(b * f); }

/// (P_out - P_in) / (0.01 * PAE) in extended precision.
inline long double pa_dc_power(long double pae, long double p_in_dbm, long double p_out_dbm) {
    return (dbm_to_mw(p_out_dbm) - dbm_to_mw(p_in_dbm)) / (0.01L * pae);
}

inline long double osc_dc_power(long double efficiency, long double p_rf_dbm) {
    return dbm_to_mw(p_rf_dbm) / efficiency;
}

inline long double mixer_dc_power(long double fom, long double p_if_dbm, long double p_rf_out_dbm) {
    return (dbm_to_mw(p_rf_out_dbm) / dbm_to_mw(p_if_dbm)) / fom;
}

struct ChainFits {
    long double pa_a, pa_b;
    long double osc_a, osc_b;
    long double mix_a, mix_b;
};

/// Total chain DC power straight from the three block formulas.
inline long double chain_total(const ChainFits& fits, long double f, long double p_if, long double p_mixer_out,
                               long double p_pa_out, long double p_osc) {
    return pa_dc_power(exp_fit(fits.pa_a, fits.pa_b, f), p_mixer_out, p_pa_out) +
           osc_dc_power(exp_fit(fits.osc_a, fits.osc_b, f), p_osc) +
           mixer_dc_power(exp_fit(fits.mix_a, fits.mix_b, f), p_if, p_mixer_out);
}

/// Exhaustive argmin of chain_total over n uniform points on [lo, hi].
inline double fine_grid_argmin(const ChainFits& fits, double lo, double hi, std::size_t n, long double p_if,
                               long double p_mixer_out, long double p_pa_out, long double p_osc) {
    double best_f = lo;
    long double best = chain_total(fits, lo, p_if, p_mixer_out, p_pa_out, p_osc);
    for (std::size_t i = 1; i < n; ++i) {
        const double f = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
        const long double t = chain_total(fits, f, p_if, p_mixer_out, p_pa_out, p_osc);
        if (t < best) {
            best = t;
            best_f = f;
        }
    }
    return best_f;
}

inline double rel_err(long double got, long double want) {
    return static_cast<double>(std::fabs((got - want) / want));
}

}  // namespace txpower::oracle
