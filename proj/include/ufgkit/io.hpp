#pragma once

// JSON encodings. Poset: {"elements": [...], "relations": [["a","b"], ...]}
// with relations in canonical pair order. Families, certificates, catalogs
// and reports embed that poset object. Parsers rebuild the library types and
// reject anything the writers would not produce.

#include <cstddef>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ufgkit/connectedness.hpp"
#include "ufgkit/context.hpp"
#include "ufgkit/error.hpp"
#include "ufgkit/ground_set.hpp"
#include "ufgkit/relation.hpp"
#include "ufgkit/ufg.hpp"

namespace ufgkit::io {

using Json = nlohmann::ordered_json;

inline Json parse_text(const std::string& text, const std::string& source = "input") {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorKind::Parse, source + ": " + e.what());
  }
}

inline Json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, "cannot open '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_text(buffer.str(), path);
}

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

/// Interns ground sets while parsing so every poset of one document shares
/// a single GroundSet object.
class GroundRegistry {
 public:
  GroundRegistry() = default;
  explicit GroundRegistry(Ground fixed) : ground_(std::move(fixed)) {}

  const Ground& resolve(std::vector<std::string> labels, const std::string& path) {
    if (!ground_) {
      try {
        ground_ = make_ground(std::move(labels));
      } catch (const Error& e) {
        throw Error(e.kind(), path + ": " + e.message());
      }
      return ground_;
    }
    if (ground_->labels() != labels)
      throw Error(ErrorKind::MixedGroundSets, path + ": elements differ from the document's ground set");
    return ground_;
  }

  const Ground& ground() const noexcept { return ground_; }

 private:
  Ground ground_;
};

namespace detail {

inline const Json& field(const Json& obj, const char* name, const std::string& path) {
  if (!obj.is_object()) throw Error(ErrorKind::Parse, path + ": expected an object");
  auto it = obj.find(name);
  if (it == obj.end()) throw Error(ErrorKind::Parse, path + ": missing field '" + name + "'");
  return *it;
}

inline const std::string& string_at(const Json& j, const std::string& path) {
  if (!j.is_string()) throw Error(ErrorKind::Parse, path + ": expected a string");
  return j.get_ref<const std::string&>();
}

inline std::uint64_t count_at(const Json& j, const std::string& path) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0))
    throw Error(ErrorKind::Parse, path + ": expected a non-negative integer");
  return j.get<std::uint64_t>();
}

inline std::vector<std::string> labels_at(const Json& j, const std::string& path) {
  if (!j.is_array()) throw Error(ErrorKind::Parse, path + ": expected an array of labels");
  std::vector<std::string> out;
  for (std::size_t k = 0; k < j.size(); ++k) out.push_back(string_at(j[k], path + "[" + std::to_string(k) + "]"));
  return out;
}

inline const Json& array_at(const Json& j, const std::string& path) {
  if (!j.is_array()) throw Error(ErrorKind::Parse, path + ": expected an array");
  return j;
}

}  // namespace detail

inline Json labels_to_json(const GroundSet& g) { return Json(g.labels()); }

inline Json to_json(const Poset& p) {
  const auto& g = *p.ground();
  Json rel = Json::array();
  for (auto [i, j] : p.pairs()) rel.push_back(Json::array({g.label(i), g.label(j)}));
  Json out = Json::object();
  out["elements"] = labels_to_json(g);
  out["relations"] = std::move(rel);
  return out;
}

inline Poset poset_from_json(const Json& j, GroundRegistry& grounds, const std::string& path = "poset") {
  const auto& ground = grounds.resolve(detail::labels_at(detail::field(j, "elements", path), path + ".elements"), path);
  const auto& rels = detail::array_at(detail::field(j, "relations", path), path + ".relations");
  bits::Word m = 0;
  for (std::size_t k = 0; k < rels.size(); ++k) {
    const auto where = path + ".relations[" + std::to_string(k) + "]";
    const auto& pair = rels[k];
    if (!pair.is_array() || pair.size() != 2) throw Error(ErrorKind::Parse, where + ": expected [smaller, larger]");
    const auto& a = detail::string_at(pair[0], where + "[0]");
    const auto& b = detail::string_at(pair[1], where + "[1]");
    const auto i = ground->find(a);
    const auto jdx = ground->find(b);
    if (!i) throw Error(ErrorKind::UnknownLabel, where + ": unknown label '" + a + "'");
    if (!jdx) throw Error(ErrorKind::UnknownLabel, where + ": unknown label '" + b + "'");
    if (*i == *jdx) throw Error(ErrorKind::ReflexivePairRejected, where + ": pair (" + a + "," + b + ")");
    if (m & bits::bit(*i, *jdx)) throw Error(ErrorKind::DuplicatePair, where + ": pair (" + a + "," + b + ") repeated");
    m |= bits::bit(*i, *jdx);
  }
  try {
    return Poset::validate(BinaryRelation(ground, m));
  } catch (const Error& e) {
    throw Error(e.kind(), path + ": " + e.message());
  }
}

inline Poset poset_from_json(const Json& j) {
  GroundRegistry grounds;
  return poset_from_json(j, grounds);
}

inline Json to_json(const BinaryRelation& rel) {
  const auto& g = *rel.ground();
  Json pairs = Json::array();
  for (auto [i, j] : rel.pairs()) pairs.push_back(Json::array({g.label(i), g.label(j)}));
  return pairs;
}

inline Json family_to_json(std::span<const Poset> family) {
  Json out = Json::array();
  for (const auto& p : family) out.push_back(to_json(p));
  return out;
}

/// Accepts a bare array of posets or {"posets": [...]}. Order and
/// multiplicity are preserved; callers normalize as needed.
inline std::vector<Poset> family_from_json(const Json& j, GroundRegistry& grounds, const std::string& path = "family") {
  const Json* list = &j;
  std::string where = path;
  if (j.is_object()) {
    list = &detail::field(j, "posets", path);
    where = path + ".posets";
  }
  detail::array_at(*list, where);
  if (list->empty()) throw Error(ErrorKind::EmptyFamily, where + ": no posets");
  std::vector<Poset> out;
  for (std::size_t k = 0; k < list->size(); ++k)
    out.push_back(poset_from_json((*list)[k], grounds, where + "[" + std::to_string(k) + "]"));
  return out;
}

inline std::vector<Poset> family_from_json(const Json& j) {
  GroundRegistry grounds;
  return family_from_json(j, grounds);
}

inline Json attributes_to_json(const AttributeSet& attrs, const GroundSet& g) {
  Json out = Json::array();
  for (const auto& m : attrs.to_vector()) out.push_back(to_text(m, g));
  return out;
}

inline AttributeSet attributes_from_json(const Json& j, const GroundSet& g, const std::string& path) {
  detail::array_at(j, path);
  AttributeSet out;
  for (std::size_t k = 0; k < j.size(); ++k) {
    const auto where = path + "[" + std::to_string(k) + "]";
    try {
      out.insert(parse_attribute(detail::string_at(j[k], where), g));
    } catch (const Error& e) {
      throw Error(e.kind(), where + ": " + e.message());
    }
  }
  return out;
}

inline Json to_json(const DistinguishingSet& d) {
  Json out = Json::object();
  out["member"] = to_json(d.member);
  out["q"] = d.restriction ? to_json(*d.restriction) : Json(nullptr);
  out["attributes"] = attributes_to_json(d.attributes, *d.member.ground());
  return out;
}

inline DistinguishingSet distinguishing_from_json(const Json& j, GroundRegistry& grounds,
                                                  const std::string& path = "distinguishing") {
  auto member = poset_from_json(detail::field(j, "member", path), grounds, path + ".member");
  std::optional<Poset> q;
  const auto& qj = detail::field(j, "q", path);
  if (!qj.is_null()) q = poset_from_json(qj, grounds, path + ".q");
  auto attrs = attributes_from_json(detail::field(j, "attributes", path), *member.ground(), path + ".attributes");
  return DistinguishingSet{std::move(member), attrs, std::move(q)};
}

/// {"members": [...], "witness": <poset>, "distinguishing": {<member key bits>: [attributes]}}
inline Json to_json(const UfgCertificate& cert) {
  Json dist = Json::object();
  for (const auto& d : cert.per_member)
    dist[canonical_bits(d.member)] = attributes_to_json(d.attributes, *d.member.ground());
  Json out = Json::object();
  out["members"] = family_to_json(cert.family);
  out["witness"] = to_json(cert.witness);
  out["distinguishing"] = std::move(dist);
  return out;
}

inline UfgCertificate certificate_from_json(const Json& j, GroundRegistry& grounds,
                                            const std::string& path = "certificate") {
  auto members = family_from_json(detail::field(j, "members", path), grounds, path + ".members");
  auto family = normalize_family(members);
  if (family.size() != members.size() || family != members)
    throw Error(ErrorKind::Parse, path + ".members: members must be distinct and in canonical order");
  auto witness = poset_from_json(detail::field(j, "witness", path), grounds, path + ".witness");
  const auto& dist = detail::field(j, "distinguishing", path);
  if (!dist.is_object() || dist.size() != family.size())
    throw Error(ErrorKind::Parse, path + ".distinguishing: expected one entry per member");
  std::vector<DistinguishingSet> per_member;
  for (const auto& m : family) {
    const auto key = canonical_bits(m);
    auto it = dist.find(key);
    if (it == dist.end()) throw Error(ErrorKind::Parse, path + ".distinguishing: no entry for member " + key);
    per_member.push_back(
        DistinguishingSet{m, attributes_from_json(*it, *m.ground(), path + ".distinguishing." + key), witness});
  }
  return UfgCertificate{std::move(family), std::move(witness), std::move(per_member)};
}

inline Json count_map_to_json(const std::map<std::size_t, std::size_t>& counts) {
  Json out = Json::object();
  for (auto [size, count] : counts) out[std::to_string(size)] = count;
  return out;
}

inline std::map<std::size_t, std::size_t> count_map_from_json(const Json& j, const std::string& path) {
  if (!j.is_object()) throw Error(ErrorKind::Parse, path + ": expected an object");
  std::map<std::size_t, std::size_t> out;
  for (auto it = j.begin(); it != j.end(); ++it) {
    std::size_t size = 0;
    try {
      std::size_t used = 0;
      size = std::stoul(it.key(), &used);
      if (used != it.key().size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw Error(ErrorKind::Parse, path + ": key '" + it.key() + "' is not a size");
    }
    out[size] = detail::count_at(it.value(), path + "." + it.key());
  }
  return out;
}

inline Json to_json(const UfgCatalog& catalog) {
  Json sets = Json::array();
  for (const auto& [key, cert] : catalog.entries()) sets.push_back(to_json(cert));
  Json stats = Json::object();
  stats["count_by_size"] = count_map_to_json(catalog.stats().count_by_size);
  Json out = Json::object();
  out["ground"] = labels_to_json(*catalog.ground());
  out["ufg_sets"] = std::move(sets);
  out["stats"] = std::move(stats);
  return out;
}

inline UfgCatalog catalog_from_json(const Json& j, const std::string& path = "catalog") {
  GroundRegistry grounds;
  const auto& ground = grounds.resolve(detail::labels_at(detail::field(j, "ground", path), path + ".ground"), path);
  UfgCatalog catalog(ground);
  const auto& sets = detail::array_at(detail::field(j, "ufg_sets", path), path + ".ufg_sets");
  for (std::size_t k = 0; k < sets.size(); ++k) {
    const auto where = path + ".ufg_sets[" + std::to_string(k) + "]";
    if (!catalog.insert(certificate_from_json(sets[k], grounds, where)))
      throw Error(ErrorKind::Parse, where + ": family listed twice");
  }
  const auto counts =
      count_map_from_json(detail::field(detail::field(j, "stats", path), "count_by_size", path + ".stats"),
                          path + ".stats.count_by_size");
  if (counts != catalog.stats().count_by_size)
    throw Error(ErrorKind::Parse, path + ".stats.count_by_size: does not match the listed families");
  return catalog;
}

inline Json to_json(const LeaveOneOutFailure& f) {
  Json out = Json::object();
  out["subset"] = family_to_json(f.subset);
  out["removed"] = to_json(f.removed);
  out["closure_size"] = f.closure_size;
  return out;
}

inline Json to_json(const ViolationRecord& v) {
  Json failures = Json::array();
  for (const auto& f : v.failures) failures.push_back(to_json(f));
  Json out = Json::object();
  out["certificate"] = to_json(v.certificate);
  out["failures"] = std::move(failures);
  return out;
}

inline ViolationRecord violation_from_json(const Json& j, GroundRegistry& grounds, const std::string& path) {
  auto cert = certificate_from_json(detail::field(j, "certificate", path), grounds, path + ".certificate");
  const auto& fj = detail::array_at(detail::field(j, "failures", path), path + ".failures");
  std::vector<LeaveOneOutFailure> failures;
  for (std::size_t k = 0; k < fj.size(); ++k) {
    const auto where = path + ".failures[" + std::to_string(k) + "]";
    auto subset = normalize_family(family_from_json(detail::field(fj[k], "subset", where), grounds, where + ".subset"));
    auto removed = poset_from_json(detail::field(fj[k], "removed", where), grounds, where + ".removed");
    const auto size = detail::count_at(detail::field(fj[k], "closure_size", where), where + ".closure_size");
    failures.push_back(LeaveOneOutFailure{std::move(subset), std::move(removed), static_cast<std::size_t>(size)});
  }
  return ViolationRecord{std::move(cert), std::move(failures)};
}

inline Json to_json(const ConnectednessReport& r) {
  Json violations = Json::array();
  for (const auto& v : r.violations) violations.push_back(to_json(v));
  Json preds = Json::array();
  for (const auto& p : r.predecessors) {
    Json entry = Json::object();
    entry["family"] = family_to_json(p.family);
    entry["predecessor"] = family_to_json(p.predecessor);
    entry["witness"] = to_json(p.witness);
    preds.push_back(std::move(entry));
  }
  Json out = Json::object();
  out["ground"] = labels_to_json(*r.ground);
  out["checked"] = r.checked;
  out["connected"] = r.connected;
  out["violations"] = std::move(violations);
  out["predecessors"] = std::move(preds);
  out["count_by_size"] = count_map_to_json(r.count_by_size);
  return out;
}

inline ConnectednessReport report_from_json(const Json& j, const std::string& path = "report") {
  GroundRegistry grounds;
  ConnectednessReport r;
  r.ground = grounds.resolve(detail::labels_at(detail::field(j, "ground", path), path + ".ground"), path);
  r.checked = detail::count_at(detail::field(j, "checked", path), path + ".checked");
  r.connected = detail::count_at(detail::field(j, "connected", path), path + ".connected");
  const auto& vj = detail::array_at(detail::field(j, "violations", path), path + ".violations");
  for (std::size_t k = 0; k < vj.size(); ++k)
    r.violations.push_back(violation_from_json(vj[k], grounds, path + ".violations[" + std::to_string(k) + "]"));
  const auto& pj = detail::array_at(detail::field(j, "predecessors", path), path + ".predecessors");
  for (std::size_t k = 0; k < pj.size(); ++k) {
    const auto where = path + ".predecessors[" + std::to_string(k) + "]";
    auto family = normalize_family(family_from_json(detail::field(pj[k], "family", where), grounds, where + ".family"));
    auto pred = normalize_family(
        family_from_json(detail::field(pj[k], "predecessor", where), grounds, where + ".predecessor"));
    auto witness = poset_from_json(detail::field(pj[k], "witness", where), grounds, where + ".witness");
    r.predecessors.push_back(PredecessorWitness{std::move(family), std::move(pred), std::move(witness)});
  }
  r.count_by_size = count_map_from_json(detail::field(j, "count_by_size", path), path + ".count_by_size");
  if (r.checked != r.connected + r.violations.size())
    throw Error(ErrorKind::Parse, path + ": checked must equal connected plus violations");
  return r;
}

inline Json to_json(const CorrigendumScenario& s) {
  Json checks = Json::array();
  for (const auto& c : s.checks) {
    Json entry = Json::object();
    entry["name"] = c.name;
    entry["passed"] = c.passed;
    entry["detail"] = c.detail;
    checks.push_back(std::move(entry));
  }
  Json out = Json::object();
  out["ground"] = labels_to_json(*s.ground);
  out["p1"] = to_json(s.p1);
  out["p2"] = to_json(s.p2);
  out["p3"] = to_json(s.p3);
  out["q"] = to_json(s.q);
  out["checks"] = std::move(checks);
  out["all_passed"] = s.all_passed();
  return out;
}

inline Json to_json(const FalsificationReport& r) {
  Json by_size = Json::object();
  for (auto [size, count] : r.checked_by_size) by_size[std::to_string(size)] = count;
  Json out = Json::object();
  out["n_range"] = r.n_range;
  out["budget"] = r.budget;
  out["seed"] = r.seed;
  out["trials_run"] = r.trials_run;
  out["trials_without_seed"] = r.trials_without_seed;
  out["families_checked"] = r.families_checked;
  out["largest_family"] = r.largest_family;
  out["checked_by_size"] = std::move(by_size);
  out["violation"] = r.violation ? to_json(*r.violation) : Json(nullptr);
  out["violation_trial"] = r.violation_trial ? Json(*r.violation_trial) : Json(nullptr);
  return out;
}

}  // namespace ufgkit::io
