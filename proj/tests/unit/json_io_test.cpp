#include <gtest/gtest.h>

#include "baire/baire.hpp"
#include "baire/json_io.hpp"

using namespace baire;
using namespace baire::json_io;

namespace {

// Serializing, parsing and serializing again reproduces the first document.
template <class T, class Parse>
void expectRoundtrip(const T& value, Parse parse) {
  Json first = toJson(value);
  Json reparsed = Json::parse(first.dump());
  EXPECT_EQ(toJson(parse(reparsed)), first) << first.dump();
}

}  // namespace

TEST(JsonIo, LargeNaturalsTravelAsStrings) {
  Nat big = Nat(1) << 80;
  EXPECT_TRUE(toJson(big).is_string());
  EXPECT_EQ(natFrom(toJson(big)), big);
  EXPECT_TRUE(toJson(Nat(46059)).is_number_unsigned());
  EXPECT_THROW(natFrom(Json(-1)), DomainError);
}

TEST(JsonIo, RandomValuesRoundtrip) {
  gen::Rng rng(61);
  for (int it = 0; it < 100; ++it) {
    expectRoundtrip(gen::sequence(rng, 3, 3, 9), seqFrom);
    expectRoundtrip(gen::code(rng, 3, 3, 6, it % 2 == 0), codeFrom);
    expectRoundtrip(gen::automaton(rng, 5, 4), automatonFrom);
    expectRoundtrip(gen::relation(rng, 5), relationFrom);
    expectRoundtrip(gen::toyModel(rng, 4), modelFrom);
  }
}

TEST(JsonIo, CertificatesRoundtrip) {
  gen::Rng rng(62);
  for (int it = 0; it < 10; ++it) {
    auto a = gen::sequence(rng, 2, 2, 3);
    auto model = gen::toyModel(rng, 3);
    auto cert = fuse(a, model, 6);
    expectRoundtrip(cert, certificateFrom);
    EXPECT_TRUE(checkCertificate(a, model, 6, certificateFrom(toJson(cert))).ok);
  }
}

TEST(JsonIo, MalformedInputIsInvalid) {
  try {
    codeFrom(Json::parse(R"({"kind":"mystery"})"));
    FAIL();
  } catch (const DomainError& e) {
    EXPECT_EQ(e.kind(), "InvalidInput");
  }
  EXPECT_THROW(seqFrom(Json::parse(R"({"prefix":[1]})")), DomainError);
}
