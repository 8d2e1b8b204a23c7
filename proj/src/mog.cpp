// SPDX-License-Identifier: Apache-2.0

#include "ofdmim/mog.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <json.hpp>

#include "ofdmim/parallel.hpp"

namespace ofdmim::mog {

namespace {

constexpr double log_pi = 1.1447298858494002; // ln(pi)

// log of sum_k w_k exp(-s / v_k) / (pi v_k), for s = |z|^2.
double log_density(const MoGDist& dist, double s)
{
    double peak = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < dist.size(); ++k) {
        if (dist.weights[k] > 0.0) {
            peak = std::max(peak, std::log(dist.weights[k]) - log_pi - std::log(dist.variances[k]) - s / dist.variances[k]);
        }
    }
    double sum = 0.0;
    for (std::size_t k = 0; k < dist.size(); ++k) {
        if (dist.weights[k] > 0.0) {
            sum += std::exp(std::log(dist.weights[k]) - log_pi - std::log(dist.variances[k]) - s / dist.variances[k] - peak);
        }
    }
    return peak + std::log(sum);
}

void sort_by_variance(MoGDist& dist)
{
    std::vector<std::size_t> order(dist.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return dist.variances[a] < dist.variances[b]; });
    MoGDist sorted;
    for (auto i : order) {
        sorted.weights.push_back(dist.weights[i]);
        sorted.variances.push_back(dist.variances[i]);
    }
    dist = std::move(sorted);
}

// Sorts, then merges neighbours whose variances agree within rel_tol and
// drops zero-weight components.
void merge_components(MoGDist& dist, double rel_tol)
{
    sort_by_variance(dist);
    MoGDist merged;
    for (std::size_t k = 0; k < dist.size(); ++k) {
        if (!(dist.weights[k] > 0.0)) {
            continue;
        }
        if (!merged.variances.empty()
            && dist.variances[k] - merged.variances.back() <= rel_tol * dist.variances[k]) {
            merged.weights.back() += dist.weights[k];
            continue;
        }
        merged.weights.push_back(dist.weights[k]);
        merged.variances.push_back(dist.variances[k]);
    }
    dist = std::move(merged);
}

// Quadrature breakpoints in log space: one per distinct component scale,
// thinned so that large mixtures do not produce thousands of panels.
std::vector<double> log_edges(std::vector<double> cuts, double below, double above)
{
    std::sort(cuts.begin(), cuts.end());
    std::vector<double> edges{cuts.front() - below};
    for (double c : cuts) {
        if (c - edges.back() >= 0.25) {
            edges.push_back(c);
        }
    }
    edges.push_back(std::max(cuts.back(), edges.back()) + above);
    return edges;
}

void require_positive_weights(const MoGDist& dist)
{
    for (double w : dist.weights) {
        if (!(w > 0.0)) {
            throw std::domain_error("entropy_upper_bound: remove zero-weight components first");
        }
    }
}

} // namespace

void MoGDist::validate() const
{
    if (weights.empty() || weights.size() != variances.size()) {
        throw std::invalid_argument("MoGDist: weights and variances must be non-empty and equal length");
    }
    double total = 0.0;
    for (std::size_t k = 0; k < weights.size(); ++k) {
        if (!(weights[k] >= 0.0) || !std::isfinite(weights[k])) {
            throw std::invalid_argument("MoGDist: weights must be finite and >= 0");
        }
        if (!(variances[k] > 0.0) || !std::isfinite(variances[k])) {
            throw std::invalid_argument("MoGDist: variances must be finite and > 0");
        }
        total += weights[k];
    }
    if (std::abs(total - 1.0) > 1e-9) {
        throw std::invalid_argument("MoGDist: weights must sum to 1");
    }
}

double MoGDist::mean_power() const
{
    double p = 0.0;
    for (std::size_t k = 0; k < size(); ++k) {
        p += weights[k] * variances[k];
    }
    return p;
}

double mog_pdf(const MoGDist& dist, std::complex<double> z)
{
    dist.validate();
    const double s = std::norm(z);
    double p = 0.0;
    for (std::size_t k = 0; k < dist.size(); ++k) {
        p += dist.weights[k] * std::exp(-s / dist.variances[k]) / (std::numbers::pi * dist.variances[k]);
    }
    return p;
}

double mog_log_pdf(const MoGDist& dist, double abs2) { return log_density(dist, abs2); }

double real_marginal_pdf(const MoGDist& dist, double x)
{
    double p = 0.0;
    for (std::size_t k = 0; k < dist.size(); ++k) {
        const double v = dist.variances[k];
        p += dist.weights[k] * std::exp(-x * x / v) / std::sqrt(std::numbers::pi * v);
    }
    return p;
}

double real_marginal_cdf(const MoGDist& dist, double x)
{
    double c = 0.0;
    for (std::size_t k = 0; k < dist.size(); ++k) {
        c += dist.weights[k] * 0.5 * std::erfc(-x / std::sqrt(dist.variances[k]));
    }
    return c;
}

double real_marginal_l1(const MoGDist& a, const MoGDist& b)
{
    a.validate();
    b.validate();
    // symmetric in x; integrate x = e^u over x > 0 and double, split at
    // every component standard deviation
    auto integrand = [&](double u) {
        const double x = std::exp(u);
        return 2.0 * std::abs(real_marginal_pdf(a, x) - real_marginal_pdf(b, x)) * x;
    };
    std::vector<double> cuts;
    for (const auto* d : {&a, &b}) {
        for (double v : d->variances) {
            cuts.push_back(0.5 * std::log(v));
        }
    }
    const auto edges = log_edges(std::move(cuts), 30.0, 3.5);
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        total += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(integrand, edges[i], edges[i + 1], 8,
                                                                               1e-7);
    }
    return total;
}

ComplexSampleSet sample_mog(const MoGDist& dist, std::size_t n, std::uint64_t seed)
{
    dist.validate();
    Rng rng(seed);
    std::discrete_distribution<std::size_t> pick(dist.weights.begin(), dist.weights.end());
    std::normal_distribution<double> unit(0.0, 1.0);
    ComplexSampleSet out;
    out.samples.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double scale = std::sqrt(0.5 * dist.variances[pick(rng)]);
        const double re = unit(rng);
        const double im = unit(rng);
        out.samples.emplace_back(scale * re, scale * im);
    }
    out.meta = "mog draws";
    return out;
}

MoGDist exact_mog_enumeration(std::span<const double> powers, int n_f, double noise_var)
{
    if (powers.size() > max_enumerated_interferers) {
        throw std::invalid_argument("exact_mog_enumeration: more than 20 interferers (2^n components)");
    }
    if (n_f < 1) {
        throw std::invalid_argument("exact_mog_enumeration: n_f must be >= 1");
    }
    if (!(noise_var > 0.0)) {
        throw std::invalid_argument("exact_mog_enumeration: noise_var must be > 0");
    }
    const double p_hit = 1.0 / n_f;
    MoGDist dist{{1.0}, {noise_var}};
    for (double t : powers) {
        if (!(t >= 0.0) || !std::isfinite(t)) {
            throw std::invalid_argument("exact_mog_enumeration: powers must be finite and >= 0");
        }
        MoGDist next;
        next.weights.reserve(2 * dist.size());
        next.variances.reserve(2 * dist.size());
        for (std::size_t k = 0; k < dist.size(); ++k) {
            next.weights.push_back(dist.weights[k] * (1.0 - p_hit));
            next.variances.push_back(dist.variances[k]);
            next.weights.push_back(dist.weights[k] * p_hit);
            next.variances.push_back(dist.variances[k] + t);
        }
        merge_components(next, 1e-12);
        dist = std::move(next);
    }
    return dist;
}

void EmSettings::validate() const
{
    if (q_prime < 1) {
        throw std::invalid_argument("EmSettings: q_prime must be >= 1");
    }
    if (max_iters < 1) {
        throw std::invalid_argument("EmSettings: max_iters must be >= 1");
    }
    if (loglik_tol < 0.0 || !std::isfinite(loglik_tol)) {
        throw std::invalid_argument("EmSettings: loglik_tol must be > 0 (or 0 for the default)");
    }
    if (restarts < 1) {
        throw std::invalid_argument("EmSettings: restarts must be >= 1");
    }
}

namespace {

struct EmState {
    MoGDist dist;
    EmRun run;
};

// E step over squared magnitudes; fills mass[k] = sum_a eta_ak and
// weighted[k] = sum_a eta_ak s_a and returns the log-likelihood.
double e_step(const MoGDist& dist, std::span<const double> s, std::vector<double>& mass,
              std::vector<double>& weighted)
{
    const std::size_t q = dist.size();
    std::vector<double> log_coef(q);
    std::vector<double> inv_var(q);
    for (std::size_t k = 0; k < q; ++k) {
        log_coef[k] = std::log(dist.weights[k]) - log_pi - std::log(dist.variances[k]);
        inv_var[k] = 1.0 / dist.variances[k];
    }
    mass.assign(q, 0.0);
    weighted.assign(q, 0.0);
    std::vector<double> term(q);
    double ll = 0.0;
    // normalisers lie in [1, q]; multiply a block of them before taking the log
    double block = 1.0;
    int in_block = 0;
    for (double sa : s) {
        std::size_t top = 0;
        for (std::size_t k = 0; k < q; ++k) {
            term[k] = log_coef[k] - sa * inv_var[k];
            if (term[k] > term[top]) {
                top = k;
            }
        }
        const double peak = term[top];
        double total = 0.0;
        for (std::size_t k = 0; k < q; ++k) {
            term[k] = k == top ? 1.0 : std::exp(term[k] - peak);
            total += term[k];
        }
        ll += peak;
        block *= total;
        if (++in_block == 128) {
            ll += std::log(block);
            block = 1.0;
            in_block = 0;
        }
        const double inv_total = 1.0 / total;
        for (std::size_t k = 0; k < q; ++k) {
            const double eta = term[k] * inv_total;
            mass[k] += eta;
            weighted[k] += eta * sa;
        }
    }
    ll += std::log(block);
    return ll;
}

EmState run_em(MoGDist init, std::span<const double> s, double mean_power, double tol, int max_iters,
               std::vector<std::string>& warnings)
{
    EmState state{std::move(init), {}};
    auto& dist = state.dist;
    auto& run = state.run;
    const double n = static_cast<double>(s.size());
    std::vector<double> mass;
    std::vector<double> weighted;
    for (int it = 0; it < max_iters; ++it) {
        const double ll = e_step(dist, s, mass, weighted);
        if (!std::isfinite(ll)) {
            run.failed = true;
            return state;
        }
        if (!run.loglik_trace.empty() && std::abs(ll - run.loglik_trace.back()) < tol) {
            run.loglik_trace.push_back(ll);
            run.converged = true;
            break;
        }
        run.loglik_trace.push_back(ll);

        // M step
        MoGDist next;
        bool dropped = false;
        for (std::size_t k = 0; k < dist.size(); ++k) {
            const double v = mass[k] > 0.0 ? weighted[k] / mass[k] : 0.0;
            if (!(mass[k] > 0.0) || !(v >= 1e-12 * mean_power)) {
                dropped = true;
                warnings.push_back("em_fit: dropped collapsed component (variance "
                                   + std::to_string(v) + ", mass " + std::to_string(mass[k]) + ")");
                continue;
            }
            next.weights.push_back(mass[k] / n);
            next.variances.push_back(v);
        }
        if (next.weights.empty()) {
            run.failed = true;
            return state;
        }
        if (dropped) {
            const double total = std::accumulate(next.weights.begin(), next.weights.end(), 0.0);
            for (double& w : next.weights) {
                w /= total;
            }
        } else {
            run.power_residuals.push_back(std::abs(next.mean_power() - mean_power) / mean_power);
        }
        dist = std::move(next);
        ++run.iterations;
    }
    run.final_loglik = e_step(dist, s, mass, weighted);
    if (!std::isfinite(run.final_loglik)) {
        run.failed = true;
    }
    return state;
}

MoGDist initial_guess(int q, double mean_power, int restart, std::uint64_t seed)
{
    MoGDist init;
    const double lo = std::log(0.5 * mean_power);
    const double hi = std::log(20.0 * mean_power);
    if (restart == 0) {
        for (int k = 0; k < q; ++k) {
            const double frac = q == 1 ? 0.0 : static_cast<double>(k) / (q - 1);
            init.variances.push_back(std::exp(lo + frac * (hi - lo)));
            init.weights.push_back(1.0 / q);
        }
        return init;
    }
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(Stream::em_restart), static_cast<std::uint64_t>(restart)));
    std::uniform_real_distribution<double> log_var(lo, hi);
    std::exponential_distribution<double> gamma1(1.0);
    double total = 0.0;
    for (int k = 0; k < q; ++k) {
        init.variances.push_back(std::exp(log_var(rng)));
        init.weights.push_back(gamma1(rng) + 1e-12);
        total += init.weights.back();
    }
    for (double& w : init.weights) {
        w /= total;
    }
    return init;
}

} // namespace

EmResult em_fit(const ComplexSampleSet& samples, const EmSettings& settings)
{
    settings.validate();
    samples.validate();
    const std::size_t n = samples.samples.size();
    if (n < 10 * static_cast<std::size_t>(settings.q_prime)) {
        throw std::invalid_argument("em_fit: need at least 10 samples per component");
    }
    std::vector<double> s;
    s.reserve(n);
    for (const auto& z : samples.samples) {
        s.push_back(std::norm(z));
    }
    const double mean_power = std::accumulate(s.begin(), s.end(), 0.0) / static_cast<double>(n);
    const auto [lo, hi] = std::minmax_element(s.begin(), s.end());
    EmResult result;
    if (*lo == *hi) {
        if (!(*lo > 0.0)) {
            throw std::invalid_argument("em_fit: all samples are zero");
        }
        result.dist = MoGDist{{1.0}, {*lo}};
        result.log_likelihood = log_likelihood(result.dist, samples);
        result.warnings.push_back("em_fit: identical sample magnitudes, single component returned");
        return result;
    }
    const double tol = settings.loglik_tol > 0.0 ? settings.loglik_tol : 1e-8 * static_cast<double>(n);

    bool have_best = false;
    for (int r = 0; r < settings.restarts; ++r) {
        auto state = run_em(initial_guess(settings.q_prime, mean_power, r, settings.seed), s, mean_power, tol,
                            settings.max_iters, result.warnings);
        if (!state.run.failed && (!have_best || state.run.final_loglik > result.log_likelihood)) {
            have_best = true;
            result.log_likelihood = state.run.final_loglik;
            result.dist = state.dist;
            result.best_restart = r;
        }
        result.runs.push_back(std::move(state.run));
    }
    if (!have_best) {
        throw ConvergenceError("em_fit: every restart failed (non-finite likelihood or all components collapsed); "
                               "samples="
                               + std::to_string(n) + " mean_power=" + std::to_string(mean_power));
    }
    sort_by_variance(result.dist);
    return result;
}

double log_likelihood(const MoGDist& dist, const ComplexSampleSet& samples)
{
    dist.validate();
    double ll = 0.0;
    for (const auto& z : samples.samples) {
        ll += log_density(dist, std::norm(z));
    }
    return ll;
}

double entropy_lower_bound_conditional(const MoGDist& dist, EntropyConvention convention)
{
    dist.validate();
    constexpr double e = std::numbers::e;
    constexpr double pi = std::numbers::pi;
    double h = 0.0;
    for (std::size_t k = 0; k < dist.size(); ++k) {
        const double v = dist.variances[k];
        const double component = convention == EntropyConvention::printed ? std::log2(2.0 * pi * e * std::sqrt(v))
                                                                           : std::log2(pi * e * v);
        h += dist.weights[k] * component;
    }
    return convention == EntropyConvention::printed ? 0.5 + h : h;
}

double entropy_upper_bound(const MoGDist& dist, EntropyConvention convention)
{
    dist.validate();
    require_positive_weights(dist);
    double weight_entropy = 0.0;
    for (double w : dist.weights) {
        weight_entropy -= w * std::log2(w);
    }
    return entropy_lower_bound_conditional(dist, convention) + weight_entropy;
}

double sum_rate_upper_bound(const MoGDist& noise_ici, const MoGDist& received, EntropyConvention convention)
{
    return entropy_upper_bound(received, convention) - entropy_lower_bound_conditional(noise_ici, convention);
}

double entropy_exact_radial(const MoGDist& dist)
{
    dist.validate();
    // H = -pi * int_0^inf f(s) log2 f(s) ds with s = |z|^2; substitute s = e^u.
    auto integrand = [&](double u) {
        const double s = std::exp(u);
        const double lf = log_density(dist, s);
        const double f = std::exp(lf);
        return -std::numbers::pi * f * (lf / std::numbers::ln2) * s;
    };
    std::vector<double> cuts;
    for (std::size_t k = 0; k < dist.size(); ++k) {
        if (dist.weights[k] > 0.0) {
            cuts.push_back(std::log(dist.variances[k]));
        }
    }
    const auto edges = log_edges(std::move(cuts), 60.0, std::log(120.0));

    double total = 0.0;
    double total_error = 0.0;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        double error = 0.0;
        total += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(integrand, edges[i], edges[i + 1], 15,
                                                                               1e-12, &error);
        total_error += error;
    }
    if (!std::isfinite(total) || total_error > 1e-6) {
        throw ConvergenceError("entropy_exact_radial: quadrature error estimate " + std::to_string(total_error));
    }
    return total;
}

std::string to_json(const MoGDist& dist, const MoGMetadata& meta)
{
    dist.validate();
    nlohmann::json j;
    j["weights"] = dist.weights;
    j["variances"] = dist.variances;
    j["metadata"] = {{"scenario", meta.scenario}, {"convention", meta.convention}};
    return j.dump(2);
}

MoGDist from_json(const std::string& text, MoGMetadata* meta)
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("MoGDist JSON: ") + e.what());
    }
    if (!j.contains("weights") || !j.contains("variances")) {
        throw std::invalid_argument("MoGDist JSON: missing weights or variances");
    }
    MoGDist dist{j.at("weights").get<std::vector<double>>(), j.at("variances").get<std::vector<double>>()};
    dist.validate();
    if (meta != nullptr) {
        *meta = MoGMetadata{};
        if (j.contains("metadata")) {
            const auto& m = j.at("metadata");
            meta->scenario = m.value("scenario", "");
            meta->convention = m.value("convention", "complex_total_variance");
        }
    }
    return dist;
}

} // namespace ofdmim::mog
