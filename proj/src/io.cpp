#include "riskched/io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace riskched {

using nlohmann::json;

namespace {

std::string summarize(const std::vector<FormatIssue>& issues) {
    std::string out;
    for (const auto& i : issues) {
        if (!out.empty()) out += "; ";
        out += "line " + std::to_string(i.line) + ": " + i.message;
    }
    return out;
}

std::string escape_pointer_token(std::string_view raw) {
    std::string out;
    for (char c : raw) {
        if (c == '~')
            out += "~0";
        else if (c == '/')
            out += "~1";
        else
            out += c;
    }
    return out;
}

// Walks syntactically valid JSON text and records the line where each value
// starts under its JSON pointer.
class LineScanner {
public:
    LineScanner(std::string_view text, std::map<std::string, std::size_t>& out) : s_(text), out_(out) {}

    void run() { value(""); }

private:
    void skip_ws() {
        while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t' || s_[pos_] == '\n' || s_[pos_] == '\r')) {
            if (s_[pos_] == '\n') ++line_;
            ++pos_;
        }
    }

    std::string_view string_body() {
        const std::size_t start = ++pos_;
        while (s_[pos_] != '"') pos_ += s_[pos_] == '\\' ? 2 : 1;
        return s_.substr(start, pos_++ - start);
    }

    void value(const std::string& path) {
        skip_ws();
        out_[path] = line_;
        const char c = s_[pos_];
        if (c == '{') {
            ++pos_;
            skip_ws();
            if (s_[pos_] == '}') {
                ++pos_;
                return;
            }
            while (true) {
                skip_ws();
                const std::string key = escape_pointer_token(string_body());
                skip_ws();
                ++pos_;  // ':'
                value(path + "/" + key);
                skip_ws();
                if (s_[pos_++] == '}') return;
            }
        } else if (c == '[') {
            ++pos_;
            skip_ws();
            if (s_[pos_] == ']') {
                ++pos_;
                return;
            }
            for (std::size_t i = 0;; ++i) {
                value(path + "/" + std::to_string(i));
                skip_ws();
                if (s_[pos_++] == ']') return;
            }
        } else if (c == '"') {
            string_body();
        } else {
            while (pos_ < s_.size() && s_[pos_] != ',' && s_[pos_] != ']' && s_[pos_] != '}' && s_[pos_] != ' ' &&
                   s_[pos_] != '\n' && s_[pos_] != '\r' && s_[pos_] != '\t')
                ++pos_;
        }
    }

    std::string_view s_;
    std::map<std::string, std::size_t>& out_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
};

std::size_t line_at_offset(std::string_view text, std::size_t offset) {
    std::size_t line = 1;
    for (std::size_t i = 0; i < offset && i < text.size(); ++i)
        if (text[i] == '\n') ++line;
    return line;
}

class DocumentReader {
public:
    explicit DocumentReader(InstanceDocument& doc) : doc_(doc) {}

    [[noreturn]] void fail(const std::string& path, const std::string& message) const {
        throw InstanceFormatError({{doc_.line_of(path), path, message}});
    }

    const json& field(const json& obj, const std::string& path, const char* name) const {
        auto it = obj.find(name);
        if (it == obj.end()) fail(path, std::string("missing field '") + name + "'");
        return *it;
    }

    Rational rational(const json& v, const std::string& path) const {
        try {
            return rational_from_json(v);
        } catch (const std::exception& e) {
            fail(path, e.what());
        }
    }

    std::vector<Rational> rationals(const json& v, const std::string& path) const {
        if (!v.is_array()) fail(path, "expected an array of rationals");
        std::vector<Rational> out;
        for (std::size_t i = 0; i < v.size(); ++i) out.push_back(rational(v[i], path + "/" + std::to_string(i)));
        return out;
    }

    std::size_t index(const json& v, const std::string& path) const {
        if (!v.is_number_integer() || v.get<long long>() < 0) fail(path, "expected a nonnegative integer");
        return v.get<std::size_t>();
    }

private:
    InstanceDocument& doc_;
};

}  // namespace

InstanceFormatError::InstanceFormatError(std::vector<FormatIssue> issues)
    : Error(ErrorCode::InvalidInstance, summarize(issues)), issues_(std::move(issues)) {}

std::size_t InstanceDocument::line_of(std::string_view pointer) const {
    std::string p(pointer);
    while (true) {
        if (auto it = lines.find(p); it != lines.end()) return it->second;
        if (p.empty()) return 1;
        p.erase(p.rfind('/'));
    }
}

Rational rational_from_json(const json& value) {
    if (value.is_number_integer()) {
        if (value.is_number_unsigned()) return Rational(value.get<unsigned long long>());
        return Rational(value.get<long long>());
    }
    if (value.is_string()) {
        try {
            return Rational::parse(value.get<std::string>());
        } catch (const std::exception&) {
            throw std::invalid_argument("'" + value.get<std::string>() + "' is not a rational");
        }
    }
    throw std::invalid_argument("expected an integer or an \"a/b\" string, got " + value.dump());
}

nlohmann::ordered_json rational_to_json(const Rational& r) {
    if (r.is_integer()) {
        try {
            return r.to_int64();
        } catch (const std::overflow_error&) {
        }
    }
    return r.str();
}

InstanceDocument read_instance_document(std::string_view text) {
    InstanceDocument doc;
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InstanceFormatError({{line_at_offset(text, e.byte == 0 ? 0 : e.byte - 1), "", e.what()}});
    }
    LineScanner(text, doc.lines).run();
    DocumentReader rd(doc);
    if (!root.is_object()) rd.fail("", "instance must be a JSON object");
    for (const auto& [key, _] : root.items()) {
        if (key != "jobs" && key != "weights" && key != "precedence" && key != "objective" && key != "scenarios")
            rd.fail("/" + escape_pointer_token(key), "unknown field '" + key + "'");
    }

    Instance& inst = doc.instance;
    inst.n = rd.index(rd.field(root, "", "jobs"), "/jobs");
    if (root.contains("weights"))
        inst.weights = rd.rationals(root["weights"], "/weights");
    else
        inst.weights.assign(inst.n, Rational(1));

    const json& objective = rd.field(root, "", "objective");
    if (!objective.is_string()) rd.fail("/objective", "objective must be a string");
    auto obj = parse_objective(objective.get<std::string>());
    if (!obj) rd.fail("/objective", "unknown objective '" + objective.get<std::string>() + "'");
    inst.objective = *obj;

    if (root.contains("precedence")) {
        const json& edges = root["precedence"];
        if (!edges.is_array()) rd.fail("/precedence", "precedence must be an array of [i, j] pairs");
        for (std::size_t e = 0; e < edges.size(); ++e) {
            const std::string path = "/precedence/" + std::to_string(e);
            if (!edges[e].is_array() || edges[e].size() != 2) rd.fail(path, "edge must be a pair [i, j]");
            inst.precedence.emplace_back(rd.index(edges[e][0], path + "/0"), rd.index(edges[e][1], path + "/1"));
        }
    }

    const json& scenarios = rd.field(root, "", "scenarios");
    if (!scenarios.is_array()) rd.fail("/scenarios", "scenarios must be an array");
    for (std::size_t k = 0; k < scenarios.size(); ++k) {
        const std::string path = "/scenarios/" + std::to_string(k);
        const json& s = scenarios[k];
        if (!s.is_object()) rd.fail(path, "scenario must be an object");
        for (const auto& [key, _] : s.items())
            if (key != "prob" && key != "p" && key != "d" && key != "w")
                rd.fail(path + "/" + escape_pointer_token(key), "unknown scenario field '" + key + "'");
        Scenario sc;
        sc.prob = rd.rational(rd.field(s, path, "prob"), path + "/prob");
        sc.p = rd.rationals(rd.field(s, path, "p"), path + "/p");
        sc.d = rd.rationals(rd.field(s, path, "d"), path + "/d");
        if (s.contains("w")) sc.w = rd.rationals(s["w"], path + "/w");
        inst.scenarios.push_back(std::move(sc));
    }
    return doc;
}

Instance parse_instance(std::string_view text) {
    InstanceDocument doc = read_instance_document(text);
    const auto report = validate_instance(doc.instance);
    if (!report.ok()) {
        std::vector<FormatIssue> issues;
        for (const auto& i : report.issues)
            issues.push_back({doc.line_of(i.path), i.path, std::string(to_string(i.code)) + ": " + i.message});
        throw InstanceFormatError(std::move(issues));
    }
    return std::move(doc.instance);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::InvalidInstance, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

nlohmann::ordered_json instance_to_json(const Instance& inst) {
    auto list = [](const std::vector<Rational>& v) {
        nlohmann::ordered_json a = nlohmann::ordered_json::array();
        for (const auto& x : v) a.push_back(rational_to_json(x));
        return a;
    };
    nlohmann::ordered_json out = nlohmann::ordered_json::object();
    out["jobs"] = inst.n;
    out["weights"] = list(inst.weights);
    nlohmann::ordered_json edges = nlohmann::ordered_json::array();
    for (auto [i, j] : inst.precedence) edges.push_back({i, j});
    out["precedence"] = edges;
    out["objective"] = std::string(to_string(inst.objective));
    nlohmann::ordered_json scenarios = nlohmann::ordered_json::array();
    for (const auto& s : inst.scenarios) {
        nlohmann::ordered_json o = nlohmann::ordered_json::object();
        o["prob"] = rational_to_json(s.prob);
        o["p"] = list(s.p);
        o["d"] = list(s.d);
        if (s.w) o["w"] = list(*s.w);
        scenarios.push_back(o);
    }
    out["scenarios"] = scenarios;
    return out;
}

std::string format_instance(const Instance& inst) { return instance_to_json(inst).dump(2) + "\n"; }

}  // namespace riskched
