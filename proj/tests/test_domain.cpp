#include <cmath>
#include <limits>

#include "catch_amalgamated.hpp"

#include "uisdial/domain/annotation.h"
#include "uisdial/domain/errors.h"
#include "uisdial/domain/rng.h"
#include "uisdial/domain/types.h"
#include "uisdial/text/text.h"

using namespace uisdial;

TEST_CASE("UisScore clamps to the 7-point range", "[domain]") {
  CHECK(UisScore(UisKind::Knowledge, 4.2).value() == 3.0);
  CHECK(UisScore(UisKind::Interest, -9.0).value() == -3.0);
  CHECK(UisScore(UisKind::Engagement, 1.25).value() == 1.25);
  CHECK(UisScore(UisKind::Engagement, std::numeric_limits<double>::infinity()).value() == 3.0);
  CHECK_THROWS_AS(UisScore(UisKind::Knowledge, std::nan("")), ValidationError);
}

TEST_CASE("enum names round-trip", "[domain]") {
  for (UisKind k : kAllKinds) CHECK(parse_uis_kind(to_string(k)) == k);
  for (Judgment j : {Judgment::Has, Judgment::Neutral, Judgment::HasNot}) {
    CHECK(parse_judgment(to_string(j)) == j);
  }
  for (Slot s : {Slot::S1, Slot::S2, Slot::S3, Slot::S4, Slot::S5, Slot::InitialQuestion,
                 Slot::ProfileInsert}) {
    CHECK(parse_slot(to_string(s)) == s);
  }
  CHECK(index_of(UisKind::Knowledge) == 0);
  CHECK(index_of(UisKind::Engagement) == 2);
  CHECK_THROWS_AS(parse_uis_kind("mood"), ValidationError);
}

TEST_CASE("scale7 sums three annotators", "[domain]") {
  CHECK(scale7_from_triplet(1, 1, 1) == 3);
  CHECK(scale7_from_triplet(1, 0, -1) == 0);
  CHECK(scale7_from_triplet(-1, -1, 0) == -2);
  try {
    scale7_from_triplet(1, 2, 0);
    FAIL("expected a validation error");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("annotator a2") != std::string::npos);
  }
}

TEST_CASE("scale7 is exhaustive over the 27 triplets", "[domain]") {
  int count = 0;
  for (int a = -1; a <= 1; ++a)
    for (int b = -1; b <= 1; ++b)
      for (int c = -1; c <= 1; ++c) {
        const int s = scale7_from_triplet(a, b, c);
        CHECK(s == a + b + c);
        CHECK(s >= -3);
        CHECK(s <= 3);
        CHECK(is_conflicted(a, b, c) == ((a == 1 || b == 1 || c == 1) && (a == -1 || b == -1 || c == -1)));
        ++count;
      }
  CHECK(count == 27);
}

TEST_CASE("transcript validation", "[domain]") {
  std::vector<Utterance> ok = {{Role::System, "Hi.", 1, Slot::S1}, {Role::User, "Hello.", 2, {}}};
  CHECK_NOTHROW(validate_transcript(ok));

  auto user_first = ok;
  std::swap(user_first[0].role, user_first[1].role);
  CHECK_THROWS_AS(validate_transcript(user_first), ValidationError);

  auto empty_text = ok;
  empty_text[1].text = "";
  CHECK_THROWS_AS(validate_transcript(empty_text), ValidationError);

  auto same_index = ok;
  same_index[1].turn_index = 1;
  CHECK_THROWS_AS(validate_transcript(same_index), ValidationError);
}

TEST_CASE("Rng is reproducible and counts draws", "[domain][rng]") {
  Rng a(42), b(42), c(43);
  bool differs = false;
  for (int i = 0; i < 100; ++i) {
    const auto x = a.uniform_index(7);
    CHECK(x == b.uniform_index(7));
    CHECK(x < 7);
    differs = differs || x != c.uniform_index(7);
  }
  CHECK(differs);
  CHECK(a.draws() == 100);
  a.uniform01();
  a.bernoulli(0.5);
  CHECK(a.draws() == 102);
  CHECK(a.seed() == 42);
}

TEST_CASE("Rng uniform draws are unbiased enough", "[domain][rng]") {
  Rng rng(7);
  std::array<int, 3> hist{};
  double sum = 0.0;
  for (int i = 0; i < 30000; ++i) {
    ++hist[rng.uniform_index(3)];
    const double u = rng.uniform01();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    sum += u;
  }
  for (int h : hist) CHECK(std::abs(h - 10000) < 400);
  CHECK(std::abs(sum / 30000 - 0.5) < 0.01);
}

TEST_CASE("text helpers", "[text]") {
  CHECK(text::trim("  a b \n") == "a b");
  CHECK(text::contains_ci("I Don't Know", "don't know"));
  CHECK(text::contains_word_ci("oh, I know.", "i know"));
  CHECK_FALSE(text::contains_word_ci("I knowingly", "i know"));
  CHECK(text::word_tokens("It's GREAT, isn't it?") ==
        std::vector<std::string>{"it's", "great", "isn't", "it"});
  CHECK(text::whitespace_tokens(" a  b\tc ").size() == 3);
  CHECK(text::ends_with_terminal_punctuation("Done."));
  CHECK(text::ends_with_terminal_punctuation("He said \"yes.\""));
  CHECK_FALSE(text::ends_with_terminal_punctuation("no end"));
  CHECK(text::decapitalize("Who is it?") == "who is it?");
}

TEST_CASE("first sentence of a lead paragraph", "[text]") {
  CHECK(text::first_sentence("George Lucas is an American film director, producer, and "
                             "screenwriter. He created Star Wars.") ==
        "George Lucas is an American film director, producer, and screenwriter.");
  CHECK(text::first_sentence("Robert De Niro (born August 17, 1943) is an American actor. More.") ==
        "Robert De Niro is an American actor.");
  CHECK(text::first_sentence("John Q. Public is a placeholder name. It is used widely.") ==
        "John Q. Public is a placeholder name.");
  CHECK(text::first_sentence("Dr. Smith works at St. Mary's hospital. Second.") ==
        "Dr. Smith works at St. Mary's hospital.");
  CHECK(text::first_sentence("No terminal mark") == "No terminal mark");
}
