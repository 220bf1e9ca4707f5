#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "ufgkit/io.hpp"

using namespace ufgkit;
using io::Json;

namespace {

ErrorKind kind_of(const std::string& text) {
  try {
    io::poset_from_json(io::parse_text(text));
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error for " << text;
  return ErrorKind::InvalidArgument;
}

std::string message_of(const std::string& text) {
  try {
    io::poset_from_json(io::parse_text(text));
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST(PosetJson, ExactLayout) {
  fixtures::Corrigendum c;
  EXPECT_EQ(io::to_json(c.p1).dump(), R"j({"elements":["a","b","a1","b1","c1"],"relations":[["a","b"],["a1","c1"]]})j");
  EXPECT_EQ(io::to_json(Poset::antichain(make_ground({"u"}))).dump(), R"j({"elements":["u"],"relations":[]})j");
  // Pairs come out in canonical order whatever the input order was.
  const auto p = io::poset_from_json(
      io::parse_text(R"j({"elements":["x","y","z"],"relations":[["y","z"],["x","z"],["x","y"]]})j"));
  EXPECT_EQ(io::to_json(p).dump(), R"j({"elements":["x","y","z"],"relations":[["x","y"],["x","z"],["y","z"]]})j");
}

TEST(PosetJson, RoundTripIsByteIdentical) {
  for (const auto& p : enumerate_all_posets(make_indexed_ground(3))) {
    const auto text = io::dump(io::to_json(p));
    const auto back = io::poset_from_json(io::parse_text(text));
    EXPECT_EQ(back, p);
    EXPECT_EQ(io::dump(io::to_json(back)), text);
  }
}

TEST(PosetJson, Errors) {
  EXPECT_EQ(kind_of(R"j({"elements":["a","b"],"relations":[["a","c"]]})j"), ErrorKind::UnknownLabel);
  EXPECT_EQ(kind_of(R"j({"elements":["a","b"],"relations":[["a","a"]]})j"), ErrorKind::ReflexivePairRejected);
  EXPECT_EQ(kind_of(R"j({"elements":["a","b"],"relations":[["a","b"],["a","b"]]})j"), ErrorKind::DuplicatePair);
  EXPECT_EQ(kind_of(R"j({"elements":["a","b"],"relations":[["a","b"],["b","a"]]})j"), ErrorKind::NotAntisymmetric);
  EXPECT_EQ(kind_of(R"j({"elements":["a","b","c"],"relations":[["a","b"],["b","c"]]})j"), ErrorKind::NotTransitive);
  EXPECT_EQ(kind_of(R"j({"elements":["a","a"],"relations":[]})j"), ErrorKind::DuplicateLabel);
  EXPECT_EQ(kind_of(R"j({"elements":[],"relations":[]})j"), ErrorKind::EmptyGroundSet);
  EXPECT_EQ(kind_of(R"j({"elements":["a"]})j"), ErrorKind::Parse);
  EXPECT_EQ(kind_of(R"j({"elements":["a","b"],"relations":[["a"]]})j"), ErrorKind::Parse);
  EXPECT_EQ(kind_of(R"j({"elements":["a","b"],"relations":[["a",1]]})j"), ErrorKind::Parse);
  EXPECT_EQ(kind_of(R"j([1,2])j"), ErrorKind::Parse);
  EXPECT_EQ(kind_of(R"j({"elements":["a","b","c","d","e","f","g","h","i"],"relations":[]})j"),
            ErrorKind::GroundSetTooLarge);
}

TEST(PosetJson, DiagnosticsNameThePath) {
  EXPECT_NE(message_of(R"j({"elements":["a","b"],"relations":[["a","b"],["a","q"]]})j").find("poset.relations[1]"),
            std::string::npos);
  EXPECT_NE(message_of(R"j({"elements":["a","b","c"],"relations":[["a","b"],["b","c"]]})j").find("(a,b) and (b,c)"),
            std::string::npos);
  try {
    io::parse_text("{\n  \"elements\": [\n  oops", "f.json");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Parse);
    EXPECT_NE(std::string(e.what()).find("f.json"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
  }
  EXPECT_THROW(io::read_file("/nonexistent/file.json"), Error);
}

TEST(FamilyJson, FormsAndErrors) {
  fixtures::Corrigendum c;
  const auto arr = io::family_to_json(c.all());
  EXPECT_EQ(io::family_from_json(arr), c.all());
  Json wrapped = Json::object();
  wrapped["posets"] = arr;
  EXPECT_EQ(io::family_from_json(wrapped), c.all());

  try {
    io::family_from_json(Json::array());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::EmptyFamily);
  }
  auto mixed = arr;
  mixed.push_back(io::to_json(Poset::antichain(make_indexed_ground(2))));
  try {
    io::family_from_json(mixed);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::MixedGroundSets);
    EXPECT_NE(std::string(e.what()).find("family[3]"), std::string::npos);
  }
  // Shared ground interning.
  const auto fam = io::family_from_json(arr);
  EXPECT_EQ(fam[0].ground().get(), fam[2].ground().get());
}

TEST(CertificateJson, RoundTrip) {
  fixtures::Corrigendum c;
  const auto cert = *is_ufg(c.all());
  const auto text = io::dump(io::to_json(cert));
  io::GroundRegistry grounds;
  const auto back = io::certificate_from_json(io::parse_text(text), grounds);
  EXPECT_TRUE(verify_certificate(back));
  EXPECT_EQ(back.family, cert.family);
  EXPECT_EQ(back.witness, cert.witness);
  EXPECT_EQ(io::dump(io::to_json(back)), text);

  const auto j = io::to_json(cert);
  // Restricted at the first witness, which lacks (a,b).
  EXPECT_EQ(j["distinguishing"][canonical_bits(c.p1)], Json::parse(R"j(["nleq(a1,c1)"])j"));
  EXPECT_EQ(j["distinguishing"][canonical_bits(c.p2)], Json::parse(R"j(["nleq(a1,b1)"])j"));
}

TEST(CertificateJson, RejectsNonCanonicalOrder) {
  fixtures::Corrigendum c;
  auto j = io::to_json(*is_ufg(c.all()));
  auto& members = j["members"];
  std::swap(members[0], members[1]);
  io::GroundRegistry grounds;
  EXPECT_THROW(io::certificate_from_json(j, grounds), Error);
}

TEST(CatalogJson, RoundTrip) {
  EnumerationOptions opts;
  opts.max_size = 3;
  const auto catalog = enumerate_ufg_exhaustive(make_indexed_ground(3), opts);
  const auto text = io::dump(io::to_json(catalog));
  const auto back = io::catalog_from_json(io::parse_text(text));
  EXPECT_TRUE(back.same_families(catalog));
  EXPECT_EQ(io::dump(io::to_json(back)), text);

  auto tampered = io::parse_text(text);
  tampered["stats"]["count_by_size"]["2"] = 0;
  EXPECT_THROW(io::catalog_from_json(tampered), Error);
}

TEST(ReportJson, RoundTrip) {
  EnumerationOptions opts;
  opts.max_size = 4;
  const auto report = verify_connectedness(make_indexed_ground(3), opts);
  const auto text = io::dump(io::to_json(report));
  const auto back = io::report_from_json(io::parse_text(text));
  EXPECT_EQ(back.checked, report.checked);
  EXPECT_EQ(back.connected, report.connected);
  EXPECT_EQ(io::dump(io::to_json(back)), text);

  auto broken = io::parse_text(text);
  broken["checked"] = report.checked + 1;
  EXPECT_THROW(io::report_from_json(broken), Error);
}

TEST(ReportJson, ViolationRecordRoundTrip) {
  fixtures::Corrigendum c;
  ViolationRecord v{*is_ufg(c.all()), {}};
  for (std::size_t k = 0; k < 3; ++k) {
    auto subset = detail::without(v.certificate.family, k);
    v.failures.push_back({subset, v.certificate.family[k], count_interval_posets(gamma_interval(subset))});
  }
  const auto text = io::dump(io::to_json(v));
  io::GroundRegistry grounds;
  const auto back = io::violation_from_json(io::parse_text(text), grounds, "v");
  EXPECT_EQ(io::dump(io::to_json(back)), text);
}

TEST(AttributeJson, RoundTripAndErrors) {
  fixtures::Corrigendum c;
  AttributeSet s;
  s.insert(c.leq("a", "b"));
  s.insert(c.nleq("b1", "c1"));
  const auto j = io::attributes_to_json(s, *c.ground);
  EXPECT_EQ(j.dump(), R"j(["leq(a,b)","nleq(b1,c1)"])j");
  EXPECT_EQ(io::attributes_from_json(j, *c.ground, "a"), s);
  EXPECT_THROW(io::attributes_from_json(Json::parse(R"j(["leq(a,zz)"])j"), *c.ground, "a"), Error);
  EXPECT_THROW(io::attributes_from_json(Json::parse(R"j(["geq(a,b)"])j"), *c.ground, "a"), Error);
}

TEST(ReportJson, CorrigendumAndFalsificationAreDeterministic) {
  EXPECT_EQ(io::dump(io::to_json(run_corrigendum())), io::dump(io::to_json(run_corrigendum())));
  const auto a = io::dump(io::to_json(falsification_search({4}, 20, 3)));
  const auto b = io::dump(io::to_json(falsification_search({4}, 20, 3)));
  EXPECT_EQ(a, b);
  EXPECT_NE(a.find("\"violation\": null"), std::string::npos);
}
