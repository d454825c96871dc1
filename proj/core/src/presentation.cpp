#include "twine/presentation.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "twine/errors.hpp"

namespace twine {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& what) {
    throw ConfigError("presentation: " + what);
}

std::vector<Exp> parse_tail(const json& v, int k, const std::string& where) {
    if (!v.is_array() || static_cast<int>(v.size()) != k)
        bad(where + " must be an array of " + std::to_string(k) + " exponents");
    std::vector<Exp> tail;
    tail.reserve(v.size());
    for (const auto& e : v) {
        if (!e.is_number_integer()) bad(where + " entries must be integers");
        tail.push_back(e.get<Exp>());
    }
    return tail;
}

// One-based generator index from a JSON object key.
int parse_index(const std::string& s, int k, const std::string& where) {
    std::size_t pos = 0;
    int idx = 0;
    try {
        idx = std::stoi(s, &pos);
    } catch (const std::exception&) {
        bad(where + " key '" + s + "' is not a generator index");
    }
    if (pos != s.size() || idx < 1 || idx > k)
        bad(where + " key '" + s + "' is not a generator index in 1.." + std::to_string(k));
    return idx;
}

}  // namespace

PcPresentation presentation_from_json_text(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        bad(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) bad("top level must be an object");

    PcPresentation p;
    if (doc.contains("label")) {
        if (!doc["label"].is_string()) bad("'label' must be a string");
        p.label = doc["label"].get<std::string>();
    }

    if (!doc.contains("generators") || !doc["generators"].is_array() || doc["generators"].empty())
        bad("'generators' must be a non-empty array");
    for (const auto& gen : doc["generators"]) {
        if (!gen.is_object() || !gen.contains("order") || !gen["order"].is_number_integer())
            bad("each generator must be an object with an integer 'order'");
        for (const auto& [gkey, gval] : gen.items())
            if (gkey != "order") bad("generator has unknown key '" + gkey + "'");
        p.rel_orders.push_back(gen["order"].get<Exp>());
    }
    const int k = p.num_generators();

    if (doc.contains("powers")) {
        if (!doc["powers"].is_object()) bad("'powers' must be an object");
        for (const auto& [key, val] : doc["powers"].items()) {
            int idx = parse_index(key, k, "'powers'");
            p.power_tails[idx - 1] = parse_tail(val, k, "'powers'[" + key + "]");
        }
    }

    if (doc.contains("commutators")) {
        if (!doc["commutators"].is_object()) bad("'commutators' must be an object");
        for (const auto& [key, val] : doc["commutators"].items()) {
            auto comma = key.find(',');
            if (comma == std::string::npos)
                bad("'commutators' key '" + key + "' must look like \"j,i\"");
            int j = parse_index(key.substr(0, comma), k, "'commutators'");
            int i = parse_index(key.substr(comma + 1), k, "'commutators'");
            if (j <= i)
                bad("'commutators' key '" + key + "' must have j > i");
            p.comm_tails[{j - 1, i - 1}] = parse_tail(val, k, "'commutators'[" + key + "]");
        }
    }

    for (const auto& [key, _] : doc.items())
        if (key != "label" && key != "generators" && key != "powers" && key != "commutators")
            bad("unknown key '" + key + "'");

    return p;
}

PcPresentation load_presentation(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open presentation file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return presentation_from_json_text(buf.str());
}

std::string presentation_to_json_text(const PcPresentation& p) {
    json doc;
    doc["label"] = p.label;
    doc["generators"] = json::array();
    for (Exp r : p.rel_orders) doc["generators"].push_back(json{{"order", r}});
    if (!p.power_tails.empty()) {
        json powers = json::object();
        for (const auto& [i, tail] : p.power_tails)
            powers[std::to_string(i + 1)] = tail;
        doc["powers"] = powers;
    }
    if (!p.comm_tails.empty()) {
        json comms = json::object();
        for (const auto& [ji, tail] : p.comm_tails)
            comms[std::to_string(ji.first + 1) + "," + std::to_string(ji.second + 1)] = tail;
        doc["commutators"] = comms;
    }
    return doc.dump(2) + "\n";
}

void save_presentation(const PcPresentation& p, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write presentation file: " + path);
    out << presentation_to_json_text(p);
}

}
