#pragma once

#include <compare>
#include <string>
#include <string_view>

namespace tenet {

// Calendar date of a daily close. No time zone.
struct Date {
  int year = 1970;
  int month = 1;
  int day = 1;

  // Parses YYYY-MM-DD; throws DataError on anything else.
  static Date parse(std::string_view text);
  std::string iso() const;

  friend auto operator<=>(const Date&, const Date&) = default;
};

bool is_valid_date(int year, int month, int day);

}  // namespace tenet
