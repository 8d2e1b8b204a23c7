// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <stdexcept>
#include <system_error>
#include <type_traits>

#include "ofdmim/cli.hpp"
#include "ofdmim/units.hpp"

namespace ofdmim::cli {

namespace {

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

template <typename T>
T parse_number(std::string_view text, std::string_view what)
{
    text = trim(text);
    T value{};
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end || text.empty()) {
        throw std::invalid_argument(std::string(what) + ": cannot parse '" + std::string(text) + "'");
    }
    return value;
}

bool parse_bool(std::string_view text, std::string_view what)
{
    text = trim(text);
    if (text == "true" || text == "1" || text == "yes" || text == "on") {
        return true;
    }
    if (text == "false" || text == "0" || text == "no" || text == "off") {
        return false;
    }
    throw std::invalid_argument(std::string(what) + ": expected true/false, got '" + std::string(text) + "'");
}

std::string fmt(double v)
{
    std::array<char, 32> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), ptr);
}

std::string join(const std::vector<int>& v)
{
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        out += (i ? "," : "") + std::to_string(v[i]);
    }
    return out;
}

struct Field {
    std::string_view key;
    bool in_metadata;
    std::function<void(RunConfig&, std::string_view)> set;
    std::function<std::string(const RunConfig&)> get;
};

// Field for a numeric member reached through `access`, a generic lambda
// returning a reference for both const and mutable configs.
template <typename T, typename Access>
Field number_field(std::string_view key, Access access, bool in_metadata = true)
{
    return Field{key, in_metadata, [key, access](RunConfig& c, std::string_view v) { access(c) = parse_number<T>(v, key); },
                 [access](const RunConfig& c) {
                     if constexpr (std::is_floating_point_v<T>) {
                         return fmt(access(c));
                     } else {
                         return std::to_string(access(c));
                     }
                 }};
}

const std::vector<Field>& fields()
{
    static const std::vector<Field> table{
        number_field<std::uint64_t>("run.seed", [](auto& c) -> auto& { return c.seed; }),
        Field{"run.trials", true,
              [](RunConfig& c, std::string_view v) { c.trials = parse_number<std::uint64_t>(v, "run.trials"); },
              [](const RunConfig& c) { return c.trials ? std::to_string(*c.trials) : std::string("default"); }},
        number_field<std::uint64_t>("run.chunk_size", [](auto& c) -> auto& { return c.chunk_size; }),
        number_field<unsigned>("run.threads", [](auto& c) -> auto& { return c.threads; }, false),
        Field{"run.out", false, [](RunConfig& c, std::string_view v) { c.out_dir = std::string(trim(v)); },
              [](const RunConfig& c) { return c.out_dir.string(); }},
        Field{"run.nf", true, [](RunConfig& c, std::string_view v) { c.nf = parse_int_list(v); },
              [](const RunConfig& c) { return c.nf.empty() ? std::string("default") : join(c.nf); }},
        Field{"run.snr_db", true,
              [](RunConfig& c, std::string_view v) {
                  parse_db_list(v);
                  c.snr_db = std::string(trim(v));
              },
              [](const RunConfig& c) { return c.snr_db.empty() ? std::string("default") : c.snr_db; }},
        Field{"run.exact_enum", true,
              [](RunConfig& c, std::string_view v) { c.exact_enum = parse_bool(v, "run.exact_enum"); },
              [](const RunConfig& c) { return std::string(c.exact_enum ? "true" : "false"); }},
        Field{"run.gnuplot", true, [](RunConfig& c, std::string_view v) { c.gnuplot = parse_bool(v, "run.gnuplot"); },
              [](const RunConfig& c) { return std::string(c.gnuplot ? "true" : "false"); }},
        Field{"rates.fixed_snr_db", true,
              [](RunConfig& c, std::string_view v) {
                  parse_db_list(v);
                  c.rates_fixed_snr_db = std::string(trim(v));
              },
              [](const RunConfig& c) { return c.rates_fixed_snr_db; }},
        number_field<int>("rates.nf_max", [](auto& c) -> auto& { return c.rates_nf_max; }),
        number_field<double>("multicell.density", [](auto& c) -> auto& { return c.multicell.density; }),
        number_field<double>("multicell.alpha", [](auto& c) -> auto& { return c.multicell.alpha; }),
        number_field<double>("multicell.tx_power", [](auto& c) -> auto& { return c.multicell.tx_power; }),
        number_field<double>("multicell.serving_distance", [](auto& c) -> auto& { return c.multicell.serving_distance; }),
        number_field<double>("multicell.noise_var", [](auto& c) -> auto& { return c.multicell.noise_var; }),
        number_field<int>("hex.n_b", [](auto& c) -> auto& { return c.hex_n_b; }),
        number_field<double>("hex.isd", [](auto& c) -> auto& { return c.hex_isd; }),
        number_field<int>("ici.qam_order", [](auto& c) -> auto& { return c.qam_order; }),
        number_field<int>("ici.bins", [](auto& c) -> auto& { return c.hist_bins; }),
        number_field<int>("em.q_prime", [](auto& c) -> auto& { return c.em.q_prime; }),
        number_field<int>("em.max_iters", [](auto& c) -> auto& { return c.em.max_iters; }),
        number_field<double>("em.loglik_tol", [](auto& c) -> auto& { return c.em.loglik_tol; }),
        number_field<int>("em.restarts", [](auto& c) -> auto& { return c.em.restarts; }),
    };
    return table;
}

} // namespace

std::vector<double> parse_db_list(std::string_view text)
{
    text = trim(text);
    if (text.empty()) {
        throw std::invalid_argument("dB list: empty");
    }
    std::vector<double> out;
    if (text.find(':') != std::string_view::npos) {
        const auto a = text.find(':');
        const auto b = text.find(':', a + 1);
        if (b == std::string_view::npos || text.find(':', b + 1) != std::string_view::npos) {
            throw std::invalid_argument("dB range: expected start:step:stop, got '" + std::string(text) + "'");
        }
        const double start = parse_number<double>(text.substr(0, a), "dB range start");
        const double step = parse_number<double>(text.substr(a + 1, b - a - 1), "dB range step");
        const double stop = parse_number<double>(text.substr(b + 1), "dB range stop");
        if (!(step > 0.0) || stop < start) {
            throw std::invalid_argument("dB range: need step > 0 and stop >= start");
        }
        out = linear_range(start, step, stop);
    } else {
        std::size_t pos = 0;
        while (pos <= text.size()) {
            const auto comma = std::min(text.find(',', pos), text.size());
            out.push_back(parse_number<double>(text.substr(pos, comma - pos), "dB list"));
            pos = comma + 1;
        }
    }
    for (double v : out) {
        if (!std::isfinite(v)) {
            throw std::invalid_argument("dB list: values must be finite");
        }
    }
    return out;
}

std::vector<int> parse_int_list(std::string_view text)
{
    text = trim(text);
    if (text.empty()) {
        throw std::invalid_argument("integer list: empty");
    }
    std::vector<int> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto comma = std::min(text.find(',', pos), text.size());
        out.push_back(parse_number<int>(text.substr(pos, comma - pos), "integer list"));
        pos = comma + 1;
    }
    return out;
}

void apply_setting(RunConfig& cfg, std::string_view key, std::string_view value)
{
    key = trim(key);
    for (const auto& f : fields()) {
        if (f.key == key) {
            f.set(cfg, value);
            return;
        }
    }
    throw std::invalid_argument("unknown config key '" + std::string(key) + "'");
}

void load_config_file(RunConfig& cfg, const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot open config file " + path.string());
    }
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        std::string_view view(line);
        view = trim(view.substr(0, view.find('#')));
        if (view.empty()) {
            continue;
        }
        const auto eq = view.find('=');
        if (eq == std::string_view::npos) {
            throw std::invalid_argument(path.string() + ":" + std::to_string(number) + ": expected key = value");
        }
        try {
            apply_setting(cfg, view.substr(0, eq), view.substr(eq + 1));
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument(path.string() + ":" + std::to_string(number) + ": " + e.what());
        }
    }
}

std::vector<std::pair<std::string, std::string>> describe(const RunConfig& cfg)
{
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& f : fields()) {
        if (f.in_metadata) {
            out.emplace_back(std::string(f.key), f.get(cfg));
        }
    }
    return out;
}

std::vector<std::string> known_keys()
{
    std::vector<std::string> out;
    for (const auto& f : fields()) {
        out.emplace_back(f.key);
    }
    return out;
}

void RunConfig::validate() const
{
    if (std::find(command_names.begin(), command_names.end(), command) == command_names.end()) {
        throw std::invalid_argument("unknown command '" + command + "'");
    }
    if (trials && *trials == 0) {
        throw std::invalid_argument("trials must be >= 1");
    }
    if (chunk_size == 0) {
        throw std::invalid_argument("run.chunk_size must be >= 1");
    }
    if (threads == 0) {
        throw std::invalid_argument("run.threads must be >= 1");
    }
    if (rates_nf_max < 2) {
        throw std::invalid_argument("rates.nf_max must be >= 2");
    }
    if (hist_bins < 10) {
        throw std::invalid_argument("ici.bins must be >= 10");
    }
    MultiCellConfig mc_cfg = multicell;
    mc_cfg.n_f = 1;
    mc_cfg.validate();
    geometry::HexScenario{hex_n_b, hex_isd, multicell.serving_distance}.validate();
    em.validate();
    for (int n : nf) {
        if (n < 1) {
            throw std::invalid_argument("run.nf entries must be >= 1");
        }
    }
    if (!snr_db.empty()) {
        parse_db_list(snr_db);
    }
    parse_db_list(rates_fixed_snr_db);
    if (!std::filesystem::exists(out_dir)) {
        return;
    }
    if (!std::filesystem::is_directory(out_dir)) {
        throw std::invalid_argument("output path " + out_dir.string() + " is not a directory");
    }
}

} // namespace ofdmim::cli
