#pragma once

// Instance file I/O. The on-disk format is JSON:
//   {"polarity":"goods"|"chores","agents":["R","C","U"],"values":[[...],...]}
// where each value is an integer, a string "a/b", or a string "w+a/b"
// (the mixed form, e.g. "7+1/3"). "agents" is optional.

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "mms3/instance.hpp"

namespace mms3 {

inline Rational value_from_json(const nlohmann::json& j) {
    if (j.is_number_integer())
        return Rational(static_cast<long long>(j.get<std::int64_t>()));
    if (j.is_string())
        return Rational::parse(j.get<std::string>());
    throw ParseError("instance value must be an integer or a fraction string, got " + j.dump());
}

inline nlohmann::json value_to_json(const Rational& r) {
    if (r.is_integer() && r.numerator() >= std::numeric_limits<std::int64_t>::min() &&
        r.numerator() <= std::numeric_limits<std::int64_t>::max())
        return static_cast<std::int64_t>(r.numerator());
    return r.str();
}

inline Instance instance_from_json(const nlohmann::json& j) {
    if (!j.is_object())
        throw ParseError("instance file must contain a JSON object");
    if (!j.contains("polarity") || !j["polarity"].is_string())
        throw ParseError("instance needs a \"polarity\" of \"goods\" or \"chores\"");
    const std::string p = j["polarity"].get<std::string>();
    Polarity polarity;
    if (p == "goods")
        polarity = Polarity::Goods;
    else if (p == "chores")
        polarity = Polarity::Chores;
    else
        throw ParseError("unknown polarity \"" + p + "\"");

    if (!j.contains("values") || !j["values"].is_array())
        throw ParseError("instance needs a \"values\" array of per-agent rows");
    std::vector<std::vector<Rational>> values;
    for (const auto& row : j["values"]) {
        if (!row.is_array())
            throw ParseError("each \"values\" entry must be an array");
        std::vector<Rational> r;
        for (const auto& cell : row)
            r.push_back(value_from_json(cell));
        values.push_back(std::move(r));
    }

    std::vector<std::string> names;
    if (j.contains("agents")) {
        if (!j["agents"].is_array())
            throw ParseError("\"agents\" must be an array of names");
        for (const auto& name : j["agents"])
            names.push_back(name.get<std::string>());
    }
    try {
        return Instance(polarity, std::move(values), std::move(names));
    } catch (const ArgumentError& e) {
        throw ParseError(e.what());
    }
}

inline nlohmann::json instance_to_json(const Instance& inst) {
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 0; i < inst.agents(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int j = 0; j < inst.items(); ++j)
            row.push_back(value_to_json(inst.value(i, j)));
        rows.push_back(std::move(row));
    }
    return nlohmann::json{
        {"polarity", to_string(inst.polarity())},
        {"agents", inst.agent_names()},
        {"values", std::move(rows)},
    };
}

inline Instance parse_instance_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        // e.byte is the 1-based offset of the failure; report line/column.
        size_t line = 1, col = 1;
        for (size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        std::ostringstream msg;
        msg << "parse error at line " << line << ", column " << col << ": " << e.what();
        throw ParseError(msg.str());
    }
    return instance_from_json(j);
}

inline Instance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open instance file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_instance_text(buf.str());
}

inline void save_instance(const Instance& inst, const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw ArgumentError("cannot write instance file: " + path);
    out << instance_to_json(inst).dump(2) << "\n";
}

} // namespace mms3
