#include "core/util/timeu.hpp"

#include <cstdio>

#include "core/util/errors.hpp"

namespace dhms::util {

std::int64_t days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153u * static_cast<unsigned>(m + (m > 2 ? -3 : 9)) + 2u) / 5u +
                         static_cast<unsigned>(d) - 1u;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, int& y, int& m, int& d) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t yy = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
    m = static_cast<int>(mp + (mp < 10 ? 3 : -9));
    y = static_cast<int>(yy + (m <= 2));
}

Timestamp to_timestamp(const CivilDateTime& c) {
    return days_from_civil(c.year, c.month, c.day) * kDay + c.hour * 3600 + c.minute * 60 +
           c.second;
}

CivilDateTime to_civil(Timestamp t) {
    std::int64_t days = t / kDay;
    std::int64_t rem = t % kDay;
    if (rem < 0) {
        rem += kDay;
        days -= 1;
    }
    CivilDateTime c;
    civil_from_days(days, c.year, c.month, c.day);
    c.hour = static_cast<int>(rem / 3600);
    c.minute = static_cast<int>((rem % 3600) / 60);
    c.second = static_cast<int>(rem % 60);
    return c;
}

Timestamp parse_iso8601(const std::string& s) {
    CivilDateTime c;
    if (s.size() == 10) {
        if (std::sscanf(s.c_str(), "%d-%d-%d", &c.year, &c.month, &c.day) != 3)
            throw StructuralError("bad date '" + s + "' (want YYYY-MM-DD)");
    } else {
        char sep = 0, tz = 0;
        int n = std::sscanf(s.c_str(), "%d-%d-%d%c%d:%d:%d%c", &c.year, &c.month, &c.day, &sep,
                            &c.hour, &c.minute, &c.second, &tz);
        if (n < 7 || (sep != 'T' && sep != ' ') || (n == 8 && tz != 'Z'))
            throw StructuralError("bad timestamp '" + s + "' (want YYYY-MM-DDTHH:MM:SSZ)");
    }
    if (c.month < 1 || c.month > 12 || c.day < 1 || c.day > 31 || c.hour > 23 || c.minute > 59 ||
        c.second > 60)
        throw StructuralError("timestamp field out of range in '" + s + "'");
    return to_timestamp(c);
}

std::string format_iso8601(Timestamp t) {
    CivilDateTime c = to_civil(t);
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02dZ", c.year, c.month, c.day,
                  c.hour, c.minute, c.second);
    return buf;
}

std::string format_iso_date(Timestamp t) {
    CivilDateTime c = to_civil(t);
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", c.year, c.month, c.day);
    return buf;
}

int day_of_week(Timestamp t) {
    std::int64_t days = t / kDay;
    if (t % kDay < 0) days -= 1;
    // 1970-01-01 was a Thursday (= 3 with Monday as 0).
    std::int64_t dow = (days + 3) % 7;
    if (dow < 0) dow += 7;
    return static_cast<int>(dow);
}

int hour_of_day(Timestamp t) {
    std::int64_t rem = t % kDay;
    if (rem < 0) rem += kDay;
    return static_cast<int>(rem / 3600);
}

Timestamp week_start(Timestamp t) {
    std::int64_t days = t / kDay;
    if (t % kDay < 0) days -= 1;
    std::int64_t dow = (days + 3) % 7;
    if (dow < 0) dow += 7;
    return (days - dow) * kDay;
}

}  // namespace dhms::util
