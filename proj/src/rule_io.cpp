#include "sqca/rule_io.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "sqca/format.hpp"

namespace sqca {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& message) { throw RuleParseError(message); }

const json& field(const json& object, const char* name) {
    const auto it = object.find(name);
    if (it == object.end()) fail(std::string("rule file: missing field \"") + name + "\"");
    return *it;
}

std::int64_t integer_at(const json& value, const std::string& where) {
    if (!value.is_number_integer()) fail("rule file: " + where + " must be an integer");
    return value.get<std::int64_t>();
}

double number_at(const json& value, const std::string& where) {
    if (!value.is_number()) fail("rule file: " + where + " must be a number");
    return value.get<double>();
}

} // namespace

RuleFile parse_rule_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        fail(std::string("rule file: ") + e.what());
    }
    if (!doc.is_object()) fail("rule file: top level must be an object");
    for (const auto& [key, value] : doc.items())
        if (key != "dims" && key != "stencil" && key != "weights")
            fail("rule file: unknown field \"" + key + "\"");

    const json& dims_node = field(doc, "dims");
    if (!dims_node.is_array() || dims_node.empty())
        fail("rule file: \"dims\" must be a nonempty array");
    std::vector<std::int64_t> dims;
    for (std::size_t i = 0; i < dims_node.size(); ++i) {
        dims.push_back(integer_at(dims_node[i], "dims[" + std::to_string(i) + "]"));
        if (dims.back() < 1) fail("rule file: dims[" + std::to_string(i) + "] must be >= 1");
    }

    const json& stencil_node = field(doc, "stencil");
    if (!stencil_node.is_array() || stencil_node.empty())
        fail("rule file: \"stencil\" must be a nonempty array of offset vectors");
    std::vector<Offset> offsets;
    for (std::size_t i = 0; i < stencil_node.size(); ++i) {
        const json& entry = stencil_node[i];
        const std::string where = "stencil[" + std::to_string(i) + "]";
        if (!entry.is_array() || entry.size() != dims.size())
            fail("rule file: " + where + " must be an array of " +
                 std::to_string(dims.size()) + " integers");
        Offset e;
        for (std::size_t c = 0; c < entry.size(); ++c)
            e.push_back(integer_at(entry[c], where + "[" + std::to_string(c) + "]"));
        offsets.push_back(std::move(e));
    }

    const json& weights_node = field(doc, "weights");
    if (!weights_node.is_array() || weights_node.size() != offsets.size())
        fail("rule file: \"weights\" must be an array aligned with \"stencil\" (" +
             std::to_string(offsets.size()) + " entries)");
    std::vector<Cx> weights;
    for (std::size_t i = 0; i < weights_node.size(); ++i) {
        const json& entry = weights_node[i];
        const std::string where = "weights[" + std::to_string(i) + "]";
        if (!entry.is_object()) fail("rule file: " + where + " must be {\"re\":..,\"im\":..}");
        for (const auto& [key, value] : entry.items())
            if (key != "re" && key != "im")
                fail("rule file: " + where + " has unknown field \"" + key + "\"");
        weights.emplace_back(number_at(field(entry, "re"), where + ".re"),
                             number_at(field(entry, "im"), where + ".im"));
    }

    // stencils are stored lex sorted; keep the file's weight alignment
    std::vector<std::size_t> order(offsets.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return lex_less(offsets[a], offsets[b]);
    });
    std::vector<Offset> sorted_offsets;
    std::vector<Cx> sorted_weights;
    for (std::size_t i : order) {
        sorted_offsets.push_back(offsets[i]);
        sorted_weights.push_back(weights[i]);
    }

    try {
        LatticeShape shape(dims);
        RuleWeights rule(Stencil::from_offsets(std::move(sorted_offsets)),
                         std::move(sorted_weights));
        return {std::move(shape), std::move(rule)};
    } catch (const std::invalid_argument& e) {
        fail(std::string("rule file: ") + e.what());
    }
}

RuleFile load_rule_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail("cannot open rule file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_rule_json(buffer.str());
}

std::string rule_to_json(const LatticeShape& shape, const RuleWeights& rule) {
    std::string out = "{\"dims\":[";
    for (std::size_t i = 0; i < shape.dims().size(); ++i) {
        if (i) out += ",";
        out += std::to_string(shape.dims()[i]);
    }
    out += "],\"stencil\":[";
    for (std::size_t i = 0; i < rule.stencil().size(); ++i) {
        if (i) out += ",";
        out += "[";
        const Offset& e = rule.stencil().offsets()[i];
        for (std::size_t c = 0; c < e.size(); ++c) {
            if (c) out += ",";
            out += std::to_string(e[c]);
        }
        out += "]";
    }
    out += "],\"weights\":[";
    for (std::size_t i = 0; i < rule.weights().size(); ++i) {
        if (i) out += ",";
        out += "{\"re\":" + format_double(rule.weights()[i].real()) +
               ",\"im\":" + format_double(rule.weights()[i].imag()) + "}";
    }
    out += "]}";
    return out;
}

} // namespace sqca
