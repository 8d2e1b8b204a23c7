// SPDX-License-Identifier: Apache-2.0

#include "ofdmim/singlecell.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/mpfr.hpp>

#include "ofdmim/detail/erfcx.hpp"
#include "ofdmim/specfun.hpp"
#include "ofdmim/units.hpp"

namespace ofdmim::singlecell {

namespace {

namespace mp = boost::multiprecision;

// Working precision must absorb the cancellation of C(n-1, m) ~ 2^{n-1}.
using Narrow = mp::number<mp::mpfr_float_backend<50>, mp::et_off>;  // n_f <= 64
using Broad = mp::number<mp::mpfr_float_backend<350>, mp::et_off>; // n_f <= 1024
constexpr int narrow_limit = 64;

void check_rho(double rho)
{
    if (!(rho > 0.0) || !std::isfinite(rho)) {
        throw std::domain_error("SNR must be positive and finite");
    }
}

void check_nf(int n_f)
{
    if (n_f < 2 || n_f > max_subcarriers) {
        throw std::domain_error("n_f must lie in [2, " + std::to_string(max_subcarriers) + "], got "
                                + std::to_string(n_f));
    }
}

// Unconditioned no-error term for m competing noise-only subcarriers:
// E[1 / (x^2 rho m + m + 1)] with x^2 ~ chi-square(1). Closed form
// sqrt(pi/2) e^{u^2} erfc(u) / sqrt(rho m (m+1)), u^2 = (m+1)/(2 rho m).
// The m = 0 term is exactly 1 (its closed form is 0 * inf).
template <class Real>
std::vector<Real> detection_terms(double rho, int m_max)
{
    std::vector<Real> terms(static_cast<std::size_t>(m_max) + 1);
    terms[0] = 1;
    const Real wrho = rho;
    const Real half_pi_root = sqrt(boost::math::constants::pi<Real>() / 2);
    for (int m = 1; m <= m_max; ++m) {
        const Real wm = m;
        const Real u = sqrt((wm + 1) / (2 * wrho * wm));
        terms[m] = half_pi_root * detail::erfcx_nonneg(u) / sqrt(wrho * wm * (wm + 1));
    }
    return terms;
}

// 1 - sum_m C(n-1, m) (-1)^m T_m, summed in descending magnitude.
template <class Real>
double error_prob_from_terms(const std::vector<Real>& terms, int n_f)
{
    const int n = n_f - 1;
    std::vector<Real> parts;
    parts.reserve(static_cast<std::size_t>(n) + 1);
    Real coeff = 1; // C(n, m)
    for (int m = 0; m <= n; ++m) {
        const Real part = coeff * terms[m];
        parts.push_back((m % 2 == 0) ? part : Real(-part));
        coeff = coeff * (n - m) / (m + 1);
    }
    std::sort(parts.begin(), parts.end(), [](const Real& a, const Real& b) { return abs(a) > abs(b); });
    Real sum = 0;
    for (const auto& p : parts) {
        sum += p;
    }
    const double p = static_cast<double>(Real(1) - sum);
    return std::clamp(p, 0.0, 1.0);
}

template <class Real>
std::vector<double> error_probs_for(double rho, const std::vector<int>& counts)
{
    const auto terms = detection_terms<Real>(rho, *std::max_element(counts.begin(), counts.end()) - 1);
    std::vector<double> out;
    out.reserve(counts.size());
    for (int n_f : counts) {
        out.push_back(error_prob_from_terms(terms, n_f));
    }
    return out;
}

std::vector<double> error_probs(double rho, const std::vector<int>& counts)
{
    const int largest = *std::max_element(counts.begin(), counts.end());
    return largest <= narrow_limit ? error_probs_for<Narrow>(rho, counts) : error_probs_for<Broad>(rho, counts);
}

} // namespace

void SingleCellConfig::validate() const
{
    check_nf(n_f);
    if (snr_db.empty()) {
        throw std::invalid_argument("SingleCellConfig: empty SNR grid");
    }
    for (double v : snr_db) {
        if (!std::isfinite(v)) {
            throw std::invalid_argument("SingleCellConfig: non-finite SNR");
        }
    }
}

double rate_symbol(double rho)
{
    check_rho(rho);
    // -Ei(-1/rho) e^{1/rho} / ln 2, with Ei(-x) = -E1(x)
    return specfun::exp_scaled_e1(1.0 / rho) / std::numbers::ln2;
}

double index_error_prob(double rho, int n_f)
{
    check_rho(rho);
    check_nf(n_f);
    if (n_f <= narrow_limit) {
        return error_prob_from_terms(detection_terms<Narrow>(rho, n_f - 1), n_f);
    }
    return error_prob_from_terms(detection_terms<Broad>(rho, n_f - 1), n_f);
}

std::vector<double> index_error_prob_all(double rho, int nf_max)
{
    check_rho(rho);
    check_nf(nf_max);
    std::vector<int> counts;
    for (int n_f = 2; n_f <= nf_max; ++n_f) {
        counts.push_back(n_f);
    }
    return error_probs(rho, counts);
}

double rate_index_from_prob(double p_err, int n_f)
{
    check_nf(n_f);
    if (!(p_err >= 0.0 && p_err <= 1.0)) {
        throw std::domain_error("rate_index: probability outside [0, 1]");
    }
    const double r2 = std::log2(static_cast<double>(n_f)) - specfun::binary_entropy(p_err)
                      - p_err * std::log2(static_cast<double>(n_f - 1));
    return std::max(r2, 0.0);
}

double rate_index(double rho, int n_f) { return rate_index_from_prob(index_error_prob(rho, n_f), n_f); }

std::vector<RatePoint> rate_total(const SingleCellConfig& cfg)
{
    cfg.validate();
    std::vector<RatePoint> out;
    out.reserve(cfg.snr_db.size());
    for (double db : cfg.snr_db) {
        RatePoint pt;
        pt.snr = db_to_linear(db);
        pt.r1 = rate_symbol(pt.snr);
        pt.p_err = index_error_prob(pt.snr, cfg.n_f);
        pt.r2 = rate_index_from_prob(pt.p_err, cfg.n_f);
        pt.r_total = pt.r1 + pt.r2;
        out.push_back(pt);
    }
    return out;
}

int optimal_nf(double rho, int nf_max, NfSearch mode)
{
    check_rho(rho);
    check_nf(nf_max);
    std::vector<int> counts;
    for (int n_f = 2; n_f <= nf_max; ++n_f) {
        if (mode == NfSearch::AllIntegers || (n_f & (n_f - 1)) == 0) {
            counts.push_back(n_f);
        }
    }
    const auto probs = error_probs(rho, counts);
    int best = 2;
    double best_rate = -1.0;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        const int n_f = counts[i];
        const double r2 = rate_index_from_prob(probs[i], n_f);
        if (r2 > best_rate) {
            best_rate = r2;
            best = n_f;
        }
    }
    return best;
}

} // namespace ofdmim::singlecell
