#pragma once

// Line-delimited family records, their digest, and run manifests.
//
//   #reflgen-families v1 group=<G> count=<N>
//   group=<G>\tkey=<digits>\tpcode=<int|->\tscale=<s>\tdim=<d>\t
//       vectors=<c,c,...;c,c,...>\tlambda=<l,l,...>\tangles=<m/k,...>
//
// One line per family (the line above is wrapped), sorted by key. Vectors
// are in canonical node order with the compact sign choice; `angles` lists
// the dihedral angles of the compact simplex over the upper triangle.

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "reflgen/family.hpp"

namespace reflgen {

inline constexpr const char* kRecordMagic = "#reflgen-families v1";

std::string record_header(const GroupType& g, std::size_t count);
std::string family_record(const Family& f);
/// Parses one record line and re-derives key and dependency; throws
/// ParseError on malformed input or inconsistent fields.
Family parse_family_record(const std::string& line);

void write_records(std::ostream& out, const GroupType& g, const std::vector<Family>& families);
std::vector<Family> read_records(std::istream& in);

/// The p-code column: the binary code for E types, base three for F4.
std::string p_code_field(const Family& f);

/// Lowercase hex SHA-256 of the given bytes.
std::string sha256_hex(const std::string& bytes);
/// Digest of the record lines (header excluded), each terminated by '\n'.
std::string records_digest(const std::vector<Family>& families);

struct RunManifest {
  std::string command;
  std::string group;
  std::map<std::string, std::string> flags;
  double wall_time_seconds = 0;
  std::size_t count = 0;
  std::string digest;
};

std::string manifest_json(const RunManifest& m);

}  // namespace reflgen
