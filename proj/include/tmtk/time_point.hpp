#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace tmtk {

enum class Granularity { Day, Year, Tick };

// A point on the model timeline at one of three granularities. A Day is one
// calendar date, a Year covers all its days, a Tick is one step of an abstract
// clock. Calendar values and ticks live on separate axes; a model should not
// mix them. Day 9999-12-31 is reserved as the open-end sentinel.
struct TimePoint {
    Granularity granularity = Granularity::Tick;
    // Day: days since 1970-01-01. Year: the year number. Tick: the tick index.
    std::int64_t value = 0;

    bool operator==(const TimePoint&) const = default;

    static TimePoint day(int year, int month, int dom);
    static TimePoint year(int y);
    static TimePoint tick(std::int64_t t);

    // Start/end of the covered interval, in serial days for calendar values
    // and raw ticks for Tick. end() is exclusive.
    std::int64_t interval_start() const;
    std::int64_t interval_end() const;

    bool is_calendar() const { return granularity != Granularity::Tick; }

    // Same point shifted forward by n units of its own granularity.
    TimePoint advanced(std::int64_t n) const;

    std::string to_string() const;
};

inline const TimePoint kOpenEndSentinel = TimePoint::day(9999, 12, 31);

// Accepts YYYY-MM-DD, a 4-digit year, or a bare non-negative integer (tick).
// Returns nullopt for malformed text or an invalid calendar date.
std::optional<TimePoint> parse_time(const std::string& text);

// a ends no later than b starts; on the tick axis vs the calendar axis this is
// never true. Overlapping intervals (a year vs one of its days) are unordered.
bool strictly_before(const TimePoint& a, const TimePoint& b);

// a's interval contains b's interval.
bool contains(const TimePoint& a, const TimePoint& b);

// Total order for sorting: axis first (calendar before tick), then interval
// start, then interval end, so a year sorts after its first day.
bool time_less(const TimePoint& a, const TimePoint& b);

}  // namespace tmtk
