#include "tmtk/time_point.hpp"

#include <chrono>
#include <cstdio>
#include <tuple>

namespace tmtk {

namespace {

using namespace std::chrono;

std::int64_t serial_of(int y, int m, int d) {
    return sys_days{year_month_day{year{y}, month{unsigned(m)}, day{unsigned(d)}}}
        .time_since_epoch()
        .count();
}

year_month_day civil_of(std::int64_t serial) {
    return year_month_day{sys_days{days{serial}}};
}

bool valid_date(int y, int m, int d) {
    return year_month_day{year{y}, month{unsigned(m)}, day{unsigned(d)}}.ok();
}

}  // namespace

TimePoint TimePoint::day(int y, int m, int dom) {
    return TimePoint{Granularity::Day, serial_of(y, m, dom)};
}

TimePoint TimePoint::year(int y) {
    return TimePoint{Granularity::Year, y};
}

TimePoint TimePoint::tick(std::int64_t t) {
    return TimePoint{Granularity::Tick, t};
}

std::int64_t TimePoint::interval_start() const {
    switch (granularity) {
        case Granularity::Day: return value;
        case Granularity::Year: return serial_of(int(value), 1, 1);
        case Granularity::Tick: return value;
    }
    return value;
}

std::int64_t TimePoint::interval_end() const {
    switch (granularity) {
        case Granularity::Day: return value + 1;
        case Granularity::Year: return serial_of(int(value) + 1, 1, 1);
        case Granularity::Tick: return value + 1;
    }
    return value + 1;
}

TimePoint TimePoint::advanced(std::int64_t n) const {
    switch (granularity) {
        case Granularity::Day: return TimePoint{Granularity::Day, value + n};
        case Granularity::Year: return TimePoint{Granularity::Year, value + n};
        case Granularity::Tick: return TimePoint{Granularity::Tick, value + n};
    }
    return *this;
}

std::string TimePoint::to_string() const {
    char buf[32];
    switch (granularity) {
        case Granularity::Day: {
            auto ymd = civil_of(value);
            std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", int(ymd.year()),
                          unsigned(ymd.month()), unsigned(ymd.day()));
            return buf;
        }
        case Granularity::Year:
            std::snprintf(buf, sizeof buf, "%04d", int(value));
            return buf;
        case Granularity::Tick:
            std::snprintf(buf, sizeof buf, "%lld", (long long)value);
            return buf;
    }
    return "";
}

std::optional<TimePoint> parse_time(const std::string& text) {
    if (text.empty()) return std::nullopt;
    for (char c : text)
        if (c != '-' && (c < '0' || c > '9')) return std::nullopt;

    auto dash1 = text.find('-');
    if (dash1 != std::string::npos) {
        auto dash2 = text.find('-', dash1 + 1);
        if (dash2 == std::string::npos) return std::nullopt;
        if (dash1 == 0 || dash2 == dash1 + 1 || dash2 + 1 >= text.size()) return std::nullopt;
        if (text.find('-', dash2 + 1) != std::string::npos) return std::nullopt;
        int y = 0, m = 0, d = 0;
        if (std::sscanf(text.c_str(), "%d-%d-%d", &y, &m, &d) != 3) return std::nullopt;
        if (!valid_date(y, m, d)) return std::nullopt;
        return TimePoint::day(y, m, d);
    }
    if (text.size() > 18) return std::nullopt;
    long long v = 0;
    if (std::sscanf(text.c_str(), "%lld", &v) != 1) return std::nullopt;
    if (text.size() == 4) return TimePoint::year(int(v));
    return TimePoint::tick(v);
}

bool strictly_before(const TimePoint& a, const TimePoint& b) {
    if (a.is_calendar() != b.is_calendar()) return false;
    return a.interval_end() <= b.interval_start();
}

bool contains(const TimePoint& a, const TimePoint& b) {
    if (a.is_calendar() != b.is_calendar()) return false;
    return a.interval_start() <= b.interval_start() && b.interval_end() <= a.interval_end();
}

bool time_less(const TimePoint& a, const TimePoint& b) {
    return std::make_tuple(!a.is_calendar(), a.interval_start(), a.interval_end()) <
           std::make_tuple(!b.is_calendar(), b.interval_start(), b.interval_end());
}

}  // namespace tmtk
