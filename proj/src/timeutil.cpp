#include "luxfield/timeutil.hpp"

#include <cstdio>

namespace luxfield {

namespace chr = std::chrono;

Timestamp parse_iso8601(std::string_view text, std::size_t line) {
    int y, mo, d, h, mi, s;
    char tail = 0;
    const std::string str(text);
    if (std::sscanf(str.c_str(), "%4d-%2d-%2dT%2d:%2d:%2d%c", &y, &mo, &d, &h, &mi, &s, &tail) !=
            7 ||
        tail != 'Z')
        throw MalformedFile("timestamp must be YYYY-MM-DDTHH:MM:SSZ, got '" + str + "'", line);
    if (mo < 1 || mo > 12 || d < 1 || d > 31 || h > 23 || mi > 59 || s > 60 || h < 0 || mi < 0 ||
        s < 0)
        throw MalformedFile("timestamp field out of range: '" + str + "'", line);
    const chr::year_month_day ymd{chr::year(y), chr::month(unsigned(mo)), chr::day(unsigned(d))};
    if (!ymd.ok()) throw MalformedFile("invalid calendar date: '" + str + "'", line);
    return chr::sys_days(ymd) + chr::hours(h) + chr::minutes(mi) + chr::seconds(s);
}

std::string format_iso8601(Timestamp t) {
    const auto days = chr::floor<chr::days>(t);
    const chr::year_month_day ymd(days);
    const chr::hh_mm_ss hms(t - days);
    char buf[48];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02dZ", int(ymd.year()),
                  unsigned(ymd.month()), unsigned(ymd.day()),
                  static_cast<int>(hms.hours().count()),
                  static_cast<int>(hms.minutes().count()),
                  static_cast<int>(hms.seconds().count()));
    return buf;
}

std::string format_compact(Timestamp t) {
    std::string s = format_iso8601(t);
    std::string out;
    for (char c : s)
        if (c != '-' && c != ':') out += c;
    return out;
}

int parse_hhmm(std::string_view text) {
    int h, m;
    char tail = 0;
    if (std::sscanf(std::string(text).c_str(), "%2d:%2d%c", &h, &m, &tail) != 2 || h < 0 ||
        h > 23 || m < 0 || m > 59)
        throw MalformedFile("time of day must be HH:MM, got '" + std::string(text) + "'", 0);
    return h * 3600 + m * 60;
}

Timestamp day_start(Timestamp t) { return chr::floor<chr::days>(t); }

}  // namespace luxfield
