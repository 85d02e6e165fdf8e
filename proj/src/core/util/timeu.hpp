#pragma once

#include <cstdint>
#include <string>

namespace dhms::util {

// All timestamps are UTC epoch seconds. Calendar math is done with the
// days-from-civil algorithm so results do not depend on the host timezone
// database or locale.

using Timestamp = std::int64_t;  // seconds since 1970-01-01T00:00:00Z
using Duration = std::int64_t;   // seconds

constexpr Duration kHour = 3600;
constexpr Duration kDay = 86400;
constexpr Duration kWeek = 7 * kDay;

struct CivilDateTime {
    int year = 1970;
    int month = 1;  // 1..12
    int day = 1;    // 1..31
    int hour = 0;
    int minute = 0;
    int second = 0;
};

std::int64_t days_from_civil(int y, int m, int d);
void civil_from_days(std::int64_t z, int& y, int& m, int& d);

Timestamp to_timestamp(const CivilDateTime& c);
CivilDateTime to_civil(Timestamp t);

// "YYYY-MM-DDTHH:MM:SSZ"; also accepts a bare date "YYYY-MM-DD" (midnight).
Timestamp parse_iso8601(const std::string& s);
std::string format_iso8601(Timestamp t);
std::string format_iso_date(Timestamp t);  // "YYYY-MM-DD"

// Monday = 0 ... Sunday = 6.
int day_of_week(Timestamp t);
int hour_of_day(Timestamp t);

// Midnight of the Monday that starts the week containing t.
Timestamp week_start(Timestamp t);

}  // namespace dhms::util
