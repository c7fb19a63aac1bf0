#include "eegdec/kvconfig.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "eegdec/errors.hpp"

namespace eegdec {

std::string kv_serialize(const KvMap& kv) {
    std::ostringstream os;
    for (const auto& [k, v] : kv) os << k << "=" << v << "\n";
    return os.str();
}

namespace {

void parse_pair(const std::string& tok, KvMap& out) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos) throw FormatError("config entry missing '=': " + tok);
    out[tok.substr(0, eq)] = tok.substr(eq + 1);
}

}  // namespace

KvMap kv_parse(const std::string& text) {
    KvMap out;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        parse_pair(line, out);
    }
    return out;
}

KvMap kv_load(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw FormatError("cannot open config file: " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return kv_parse(ss.str());
}

void kv_save(const KvMap& kv, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw FormatError("cannot write config file: " + path);
    f << kv_serialize(kv);
}

std::string kv_serialize_inline(const KvMap& kv) {
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, v] : kv) {
        if (!first) os << " ";
        os << k << "=" << v;
        first = false;
    }
    return os.str();
}

KvMap kv_parse_inline(const std::string& line) {
    KvMap out;
    std::istringstream is(line);
    std::string tok;
    while (is >> tok) parse_pair(tok, out);
    return out;
}

std::string kv_get(const KvMap& kv, const std::string& key, const std::string& fallback) {
    auto it = kv.find(key);
    return it == kv.end() ? fallback : it->second;
}

long kv_get_int(const KvMap& kv, const std::string& key, long fallback) {
    auto it = kv.find(key);
    if (it == kv.end()) return fallback;
    try {
        return std::stol(it->second);
    } catch (const std::exception&) {
        throw FormatError("config key '" + key + "' is not an integer: " + it->second);
    }
}

double kv_get_double(const KvMap& kv, const std::string& key, double fallback) {
    auto it = kv.find(key);
    if (it == kv.end()) return fallback;
    try {
        return std::stod(it->second);
    } catch (const std::exception&) {
        throw FormatError("config key '" + key + "' is not a number: " + it->second);
    }
}

std::vector<int> parse_int_list(const std::string& csv) {
    std::vector<int> out;
    std::string cur;
    std::istringstream is(csv);
    while (std::getline(is, cur, ',')) {
        if (cur.empty()) continue;
        out.push_back(std::stoi(cur));
    }
    return out;
}

std::string format_int_list(const std::vector<int>& v) {
    std::ostringstream os;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) os << ",";
        os << v[i];
    }
    return os.str();
}

std::string format_fixed(double v, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
    // avoid the "-0.0000" artifact
    std::string s(buf);
    bool all_zero = true;
    for (char c : s)
        if (c >= '1' && c <= '9') all_zero = false;
    if (all_zero && !s.empty() && s[0] == '-') s.erase(0, 1);
    return s;
}

std::string format_full(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf);
}

}  // namespace eegdec
