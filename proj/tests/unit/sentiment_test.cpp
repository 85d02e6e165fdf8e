#include "doctest.h"

#include "core/sentiment/lexicon.hpp"
#include "core/util/errors.hpp"

using namespace dhms;
using sentiment::Label;
using sentiment::Lexicon;

namespace {

Lexicon tiny_lexicon() {
    return Lexicon({{"good", 1}, {"great", 1}, {"clean", 1}, {"dirty", -1}, {"broken", -1}},
                   {"the", "was", "a", "is"});
}

#ifndef DHMS_DATA_DIR
#define DHMS_DATA_DIR "data"
#endif

}  // namespace

TEST_CASE("empty text is neutral with zero confidence") {
    auto r = tiny_lexicon().score_text("");
    CHECK(r.score == 0.0);
    CHECK(r.label == Label::Neutral);
    CHECK(r.confidence == 0.0);
}

TEST_CASE("negation flips the next polar token") {
    auto r = tiny_lexicon().score_text("the food was not good");
    CHECK(r.score == doctest::Approx(-1.0));
    CHECK(r.label == Label::Negative);
    // tokens after stop-word removal: food, not, good -> one match of three
    CHECK(r.confidence == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("positive phrases average to one") {
    auto r = tiny_lexicon().score_text("clean room, great staff");
    CHECK(r.score == doctest::Approx(1.0));
    CHECK(r.label == Label::Positive);
    CHECK(r.confidence == doctest::Approx(0.5));
}

TEST_CASE("unmatched text scores zero but neutral") {
    auto r = tiny_lexicon().score_text("corridor lamp third floor");
    CHECK(r.score == 0.0);
    CHECK(r.label == Label::Neutral);
    CHECK(r.confidence == 0.0);
}

TEST_CASE("scoring is pure and bounded") {
    auto lex = tiny_lexicon();
    const char* samples[] = {"good good dirty", "not broken", "never clean dirty broken",
                             "no good at all", "GOOD!!! Dirty."};
    for (const char* s : samples) {
        auto a = lex.score_text(s);
        auto b = lex.score_text(s);
        CHECK(a.score == b.score);
        CHECK(a.confidence == b.confidence);
        CHECK(a.score >= -1.0);
        CHECK(a.score <= 1.0);
    }
}

TEST_CASE("single negation flips exactly one contribution") {
    auto lex = tiny_lexicon();
    auto plain = lex.score_text("clean good");        // +2 / 2
    auto negated = lex.score_text("clean not good");  // +1 -1 / 2
    CHECK(plain.score == doctest::Approx(1.0));
    CHECK(negated.score == doctest::Approx(0.0));
}

TEST_CASE("neutral band splits labels") {
    Lexicon lex({{"good", 1}, {"bad", -1}}, {});
    CHECK(lex.score_text("good bad good").label == Label::Positive);   // +1/3
    CHECK(lex.score_text("bad good bad").label == Label::Negative);    // -1/3
    CHECK(lex.score_text("good bad").label == Label::Neutral);         // 0
}

TEST_CASE("bundled lexicon loads and scores hostel phrases") {
    auto lex = Lexicon::load(std::string(DHMS_DATA_DIR) + "/sentiment_lexicon.tsv",
                             std::string(DHMS_DATA_DIR) + "/stopwords.tsv");
    CHECK(lex.term_count() >= 190);
    CHECK(lex.score_text("room was clean and the staff was helpful").label == Label::Positive);
    CHECK(lex.score_text("washroom is filthy and the tap is broken").label == Label::Negative);
    CHECK(lex.score_text("the food was not good").label == Label::Negative);
}

TEST_CASE("lexicon file errors are reported") {
    CHECK_THROWS_AS(Lexicon::load("/nonexistent/lex.tsv", "/nonexistent/stop.tsv"), IoError);
    CHECK_THROWS_AS(Lexicon({{"weird", 3}}, {}), ValidationError);
}
