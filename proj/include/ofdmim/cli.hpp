// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: run configuration, key-value config files and the
// figure-data commands. Every command writes CSV files whose contents depend
// only on the configuration and the seed.

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ofdmim/geometry.hpp"
#include "ofdmim/mog.hpp"
#include "ofdmim/types.hpp"

namespace ofdmim::cli {

inline constexpr std::string_view artifact_version = "1.0.0";

inline constexpr int exit_ok = 0;
inline constexpr int exit_validation = 2;
inline constexpr int exit_runtime = 3;

struct RunConfig {
    std::string command;

    std::uint64_t seed = 1;
    std::optional<std::uint64_t> trials; ///< unset: per-command default
    std::uint64_t chunk_size = 10000;
    unsigned threads = 1;
    std::filesystem::path out_dir = "out";
    std::vector<int> nf;     ///< empty: per-command default
    std::string snr_db;      ///< range text, empty: per-command default
    bool exact_enum = false;
    bool gnuplot = false;

    std::string rates_fixed_snr_db = "-10,0,10,20";
    int rates_nf_max = 1024;

    MultiCellConfig multicell; ///< n_f unused, see nf
    int hex_n_b = 19;
    double hex_isd = 100.0;
    int qam_order = 4;
    int hist_bins = 200;
    mog::EmSettings em;

    void validate() const;
    /// Effective trials for a command.
    std::uint64_t trials_or(std::uint64_t fallback) const { return trials.value_or(fallback); }
};

/// Sets one namespaced key (e.g. "multicell.alpha"). Throws
/// std::invalid_argument on unknown keys or unparsable values.
void apply_setting(RunConfig& cfg, std::string_view key, std::string_view value);

/// Reads "key = value" lines; '#' starts a comment.
void load_config_file(RunConfig& cfg, const std::filesystem::path& path);

/// Every key with its current value, in a fixed order. Execution-only keys
/// (run.threads, run.out) are omitted so that file headers do not depend on them.
std::vector<std::pair<std::string, std::string>> describe(const RunConfig& cfg);

/// All recognised keys, including the execution-only ones.
std::vector<std::string> known_keys();

/// "start:step:stop" (inclusive) or a comma list.
std::vector<double> parse_db_list(std::string_view text);
std::vector<int> parse_int_list(std::string_view text);

/// Runs cfg.command and returns the files written.
std::vector<std::filesystem::path> run_command(const RunConfig& cfg);

inline const std::vector<std::string_view> command_names{"index-error", "rates", "sinr-cdf", "ici-pdf", "sum-rate"};

/// Full program: parses argv, runs, maps failures to exit codes.
int main(int argc, char** argv);

} // namespace ofdmim::cli
