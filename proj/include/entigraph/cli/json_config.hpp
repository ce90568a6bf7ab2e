#pragma once

#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

namespace entigraph::cli {

/// Reads `--config` files written as JSON. Object keys are option long names
/// without dashes; a nested object addresses a subcommand:
///   {"seed": 3, "simulate": {"v": 100, "lambda": 3}}
/// Arrays give multiple values. Command-line values win over the file.
class JsonConfig : public CLI::Config {
  public:
    std::string to_config(const CLI::App* app, bool default_also, bool write_description,
                          std::string prefix) const override;
    std::vector<CLI::ConfigItem> from_config(std::istream& input) const override;
};

/// Resolved option values of app and of every subcommand that ran (all
/// subcommands when none ran). Numeric text becomes a JSON number, flags
/// become booleans.
nlohmann::ordered_json resolved_options(const CLI::App& app);

}  // namespace entigraph::cli
