#include "entigraph/cli/json_config.hpp"

#include <charconv>

namespace entigraph::cli {
namespace {

void flatten(const nlohmann::json& node, std::vector<std::string>& parents, std::vector<CLI::ConfigItem>& items) {
    for (const auto& [key, value] : node.items()) {
        if (value.is_object()) {
            parents.push_back(key);
            flatten(value, parents, items);
            parents.pop_back();
            continue;
        }
        if (value.is_null()) continue;
        CLI::ConfigItem item;
        item.parents = parents;
        item.name = key;
        auto text = [](const nlohmann::json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
        if (value.is_array()) {
            for (const auto& v : value) item.inputs.push_back(text(v));
        } else {
            item.inputs.push_back(text(value));
        }
        items.push_back(std::move(item));
    }
}

nlohmann::ordered_json typed(const std::string& s) {
    double d = 0.0;
    const char* end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), end, d);
    if (!s.empty() && ec == std::errc() && ptr == end) {
        long long i = 0;
        const auto [iptr, iec] = std::from_chars(s.data(), end, i);
        if (iec == std::errc() && iptr == end) return i;
        unsigned long long u = 0;
        const auto [uptr, uec] = std::from_chars(s.data(), end, u);
        if (uec == std::errc() && uptr == end) return u;
        return d;
    }
    return s;
}

}  // namespace

std::vector<CLI::ConfigItem> JsonConfig::from_config(std::istream& input) const {
    nlohmann::json root;
    try {
        root = nlohmann::json::parse(input);
    } catch (const nlohmann::json::exception& e) {
        throw CLI::ConversionError(std::string("config file is not valid JSON: ") + e.what());
    }
    if (!root.is_object()) throw CLI::ConversionError("config file must hold a JSON object");
    std::vector<CLI::ConfigItem> items;
    std::vector<std::string> parents;
    flatten(root, parents, items);
    return items;
}

nlohmann::ordered_json resolved_options(const CLI::App& app) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (const CLI::Option* opt : app.get_options()) {
        const auto& lnames = opt->get_lnames();
        if (lnames.empty() || lnames.front() == "help" || lnames.front() == "config" ||
            lnames.front() == "version") continue;
        const std::string& name = lnames.front();
        if (opt->get_expected_max() == 0) {
            obj[name] = opt->count() > 0;
            continue;
        }
        const auto& results = opt->results();
        if (results.empty()) {
            const std::string def = opt->get_default_str();
            obj[name] = def.empty() ? nlohmann::ordered_json(nullptr) : typed(def);
        } else if (results.size() == 1 && opt->get_items_expected_max() <= 1) {
            obj[name] = typed(results.front());
        } else {
            auto arr = nlohmann::ordered_json::array();
            for (const auto& r : results) arr.push_back(typed(r));
            obj[name] = std::move(arr);
        }
    }
    auto ran = app.get_subcommands([](const CLI::App* s) { return s->count() > 0; });
    if (ran.empty()) ran = app.get_subcommands([](const CLI::App*) { return true; });
    for (const CLI::App* sub : ran) obj[sub->get_name()] = resolved_options(*sub);
    return obj;
}

std::string JsonConfig::to_config(const CLI::App* app, bool, bool, std::string) const {
    return resolved_options(*app).dump(2) + "\n";
}

}  // namespace entigraph::cli
