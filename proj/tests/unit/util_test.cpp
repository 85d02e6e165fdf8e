#include "doctest.h"

#include <cmath>
#include <set>

#include "core/util/base64.hpp"
#include "core/util/errors.hpp"
#include "core/util/rng.hpp"
#include "core/util/timeu.hpp"

using namespace dhms::util;

TEST_CASE("civil time round trips and calendar facts") {
    CHECK(parse_iso8601("1970-01-01T00:00:00Z") == 0);
    CHECK(day_of_week(0) == 3);  // 1970-01-01 was a Thursday
    Timestamp t = parse_iso8601("2024-01-03T14:30:00Z");
    CHECK(day_of_week(t) == 2);  // Wednesday
    CHECK(hour_of_day(t) == 14);
    CHECK(format_iso8601(t) == "2024-01-03T14:30:00Z");
    CHECK(format_iso_date(week_start(t)) == "2024-01-01");  // the Monday
    CHECK(day_of_week(week_start(t)) == 0);
    CHECK_THROWS_AS(parse_iso8601("not a date"), dhms::StructuralError);
    CHECK_THROWS_AS(parse_iso8601("2024-13-01"), dhms::StructuralError);

    // round trip across a few decades
    for (Timestamp probe : {Timestamp{86399}, Timestamp{951861599}, Timestamp{1893456000}})
        CHECK(parse_iso8601(format_iso8601(probe)) == probe);
}

TEST_CASE("base64 round trips and rejects malformed text") {
    Rng rng(1);
    for (int len = 0; len < 40; ++len) {
        std::vector<std::uint8_t> data;
        for (int i = 0; i < len; ++i) data.push_back(static_cast<std::uint8_t>(rng.below(256)));
        auto enc = base64_encode(data);
        auto dec = base64_decode(enc);
        REQUIRE(dec.has_value());
        CHECK(*dec == data);
    }
    CHECK_FALSE(base64_decode("abc").has_value());        // bad length
    CHECK_FALSE(base64_decode("ab=c").has_value());       // interior padding
    CHECK_FALSE(base64_decode("a\nbc").has_value());      // whitespace
    CHECK(base64_decode("")->empty());
}

TEST_CASE("splitmix stream is stable across runs and platforms") {
    Rng rng(0);
    // reference values for seed 0, fixed for reproducibility of fixtures
    CHECK(rng.next_u64() == 0xE220A8397B1DCDAFULL);
    CHECK(rng.next_u64() == 0x6E789E6AA1B965F4ULL);

    Rng a(123), b(123);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());

    Rng bounded(5);
    for (int i = 0; i < 1000; ++i) {
        CHECK(bounded.below(7) < 7);
        double u = bounded.uniform();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }

    // derived streams differ from each other and the parent
    Rng parent(9);
    Rng s0 = Rng::derive(9, 0);
    Rng s1 = Rng::derive(9, 1);
    CHECK(s0.next_u64() != s1.next_u64());
}

TEST_CASE("sampling without replacement returns distinct indices") {
    Rng rng(4);
    auto picks = rng.sample_without_replacement(10, 6);
    CHECK(picks.size() == 6);
    std::set<std::size_t> unique(picks.begin(), picks.end());
    CHECK(unique.size() == 6);
    for (auto p : picks) CHECK(p < 10);

    auto all = rng.sample_without_replacement(4, 99);
    CHECK(all.size() == 4);
}

TEST_CASE("poisson draws have approximately the right mean") {
    Rng rng(6);
    double sum = 0.0;
    const int n = 20000;
    for (int i = 0; i < n; ++i) sum += rng.poisson(4.0);
    double mean = sum / n;
    CHECK(std::abs(mean - 4.0) < 3.0 * std::sqrt(4.0 / n));
}
