#pragma once

#include <map>
#include <string>
#include <vector>

namespace eegdec {

// Flat key=value text config: one pair per line, keys sorted, '#' comments.
// The one grammar shared by architecture configs, CLI config files, run
// manifests and search histories.
using KvMap = std::map<std::string, std::string>;

std::string kv_serialize(const KvMap& kv);
KvMap kv_parse(const std::string& text);
KvMap kv_load(const std::string& path);
void kv_save(const KvMap& kv, const std::string& path);

// single-line form "k1=v1 k2=v2" used in history files
std::string kv_serialize_inline(const KvMap& kv);
KvMap kv_parse_inline(const std::string& line);

std::string kv_get(const KvMap& kv, const std::string& key, const std::string& fallback);
long kv_get_int(const KvMap& kv, const std::string& key, long fallback);
double kv_get_double(const KvMap& kv, const std::string& key, double fallback);

std::vector<int> parse_int_list(const std::string& csv);
std::string format_int_list(const std::vector<int>& v);

// fixed-format floating point helpers; all emitted text artifacts use these
// so reruns are byte-identical
std::string format_fixed(double v, int decimals);
std::string format_full(double v);  // shortest round-trip

}  // namespace eegdec
