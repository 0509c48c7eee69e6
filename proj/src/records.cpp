#include "reflgen/records.hpp"

#include <openssl/evp.h>

#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "reflgen/angle.hpp"
#include "reflgen/diagram.hpp"
#include "reflgen/enumerate.hpp"
#include "reflgen/error.hpp"

namespace reflgen {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

std::int64_t to_int(const std::string& s) {
  std::size_t used = 0;
  std::int64_t v = 0;
  try {
    v = std::stoll(s, &used);
  } catch (const std::logic_error&) {
    throw ParseError("bad integer '" + s + "'");
  }
  if (used != s.size()) throw ParseError("bad integer '" + s + "'");
  return v;
}

template <typename T>
std::string join(const std::vector<T>& v, const char* sep) {
  std::ostringstream out;
  for (std::size_t i = 0; i < v.size(); ++i) out << (i ? sep : "") << v[i];
  return out.str();
}

}  // namespace

std::string record_header(const GroupType& g, std::size_t count) {
  return std::string(kRecordMagic) + " group=" + g.name() + " count=" + std::to_string(count);
}

std::string p_code_field(const Family& f) {
  if (f.target.series == Series::E) return std::to_string(p_code_e_series(f));
  if (f.target.series == Series::F) return std::to_string(p_code_f4(f));
  return "-";
}

std::string family_record(const Family& f) {
  std::vector<std::string> vecs, angles;
  for (const auto& v : f.vectors) vecs.push_back(join(v, ","));
  for (std::size_t i = 0; i < f.size(); ++i)
    for (std::size_t j = i + 1; j < f.size(); ++j)
      angles.push_back(angle_class(f.vectors[i], f.vectors[j]).supplement().str());
  std::ostringstream out;
  out << "group=" << f.target.name() << "\tkey=" << f.key << "\tpcode=" << p_code_field(f) << "\tscale=" << f.scale
      << "\tdim=" << (f.vectors.empty() ? 0 : f.vectors.front().size()) << "\tvectors=" << join(vecs, ";")
      << "\tlambda=" << join(f.lambda, ",") << "\tangles=" << join(angles, ",");
  return out.str();
}

Family parse_family_record(const std::string& line) {
  std::map<std::string, std::string> fields;
  for (const auto& part : split(line, '\t')) {
    const auto eq = part.find('=');
    if (eq == std::string::npos) throw ParseError("record field without '=': " + part);
    fields[part.substr(0, eq)] = part.substr(eq + 1);
  }
  for (const char* k : {"group", "key", "scale", "dim", "vectors"})
    if (!fields.count(k)) throw ParseError(std::string("record lacks field ") + k);
  GroupType g;
  try {
    g = GroupType::parse(fields["group"]);
  } catch (const Error& e) {
    throw ParseError(std::string("record group: ") + e.what());
  }
  const auto scale = to_int(fields["scale"]);
  const auto dim = static_cast<std::size_t>(to_int(fields["dim"]));
  std::vector<IntVector> vectors;
  for (const auto& vs : split(fields["vectors"], ';')) {
    IntVector v;
    for (const auto& c : split(vs, ',')) v.push_back(to_int(c));
    if (v.size() != dim) throw ParseError("vector '" + vs + "' does not have dim " + std::to_string(dim));
    vectors.push_back(std::move(v));
  }
  Family f;
  try {
    f = make_family(g, static_cast<int>(scale), vectors);
  } catch (const Error& e) {
    throw ParseError(std::string("record vectors: ") + e.what());
  }
  if (f.key != fields["key"]) throw ParseError("record key " + fields["key"] + " does not match its vectors (" + f.key + ")");
  if (fields.count("lambda") && fields["lambda"] != join(f.lambda, ","))
    throw ParseError("record lambda does not match its vectors");
  return f;
}

void write_records(std::ostream& out, const GroupType& g, const std::vector<Family>& families) {
  out << record_header(g, families.size()) << '\n';
  for (const auto& f : families) out << family_record(f) << '\n';
}

std::vector<Family> read_records(std::istream& in) {
  std::vector<Family> out;
  std::string line;
  bool header = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line.rfind(kRecordMagic, 0) == 0) {
      header = true;
      continue;
    }
    if (line[0] == '#') continue;
    out.push_back(parse_family_record(line));
  }
  if (!header && !out.empty()) throw ParseError("missing '" + std::string(kRecordMagic) + "' header");
  return out;
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1) throw Error("SHA-256 failed");
  std::ostringstream out;
  for (unsigned i = 0; i < len; ++i) out << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
  return out.str();
}

std::string records_digest(const std::vector<Family>& families) {
  std::string all;
  for (const auto& f : families) all += family_record(f) + '\n';
  return sha256_hex(all);
}

std::string manifest_json(const RunManifest& m) {
  nlohmann::ordered_json j;
  j["format"] = "reflgen-manifest v1";
  j["command"] = m.command;
  j["group"] = m.group;
  j["flags"] = m.flags;
  j["count"] = m.count;
  j["digest"] = "sha256:" + m.digest;
  j["wall_time_seconds"] = m.wall_time_seconds;
  return j.dump(2) + "\n";
}

}  // namespace reflgen
