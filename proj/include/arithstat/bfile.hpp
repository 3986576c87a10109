#pragma once

// OEIS b-file: '#' comment lines, blank lines, and data lines "index value".

#include <charconv>
#include <cstdint>
#include <map>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "arithstat/error.hpp"
#include "arithstat/summation.hpp"

namespace arithstat {

struct BFileEntry {
  std::int64_t index;
  std::int64_t value;
  friend bool operator==(const BFileEntry&, const BFileEntry&) = default;
};

struct BFile {
  std::string sequence_id;
  std::vector<BFileEntry> entries;  // strictly increasing indices
  friend bool operator==(const BFile&, const BFile&) = default;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline std::int64_t parse_int64(std::string_view token, std::size_t line) {
  std::int64_t v = 0;
  const auto [ptr, ec] =
      std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec == std::errc::result_out_of_range)
    throw ParseError("integer overflow in '" + std::string(token) + "'", line);
  if (ec != std::errc() || ptr != token.data() + token.size())
    throw ParseError("not an integer: '" + std::string(token) + "'", line);
  return v;
}

}  // namespace detail

inline BFile parse_bfile(std::string_view text, std::string sequence_id = {}) {
  BFile out;
  out.sequence_id = std::move(sequence_id);
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    const auto raw = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{}
                                        : text.substr(nl + 1);
    ++line_no;
    const auto line = detail::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto gap = line.find_first_of(" \t");
    if (gap == std::string_view::npos)
      throw ParseError("expected 'index value'", line_no);
    const auto rest = detail::trim(line.substr(gap));
    if (rest.find_first_of(" \t") != std::string_view::npos)
      throw ParseError("trailing fields after 'index value'", line_no);
    const BFileEntry e{detail::parse_int64(line.substr(0, gap), line_no),
                       detail::parse_int64(rest, line_no)};
    if (!out.entries.empty()) {
      const auto prev = out.entries.back().index;
      if (e.index == prev)
        throw ParseError("duplicate index " + std::to_string(e.index),
                         line_no);
      if (e.index < prev)
        throw ParseError("indices not increasing at " +
                             std::to_string(e.index),
                         line_no);
    }
    out.entries.push_back(e);
  }
  return out;
}

inline std::string serialize_bfile(const BFile& b) {
  std::ostringstream out;
  if (!b.sequence_id.empty()) out << "# " << b.sequence_id << '\n';
  for (const auto& e : b.entries) out << e.index << ' ' << e.value << '\n';
  return out.str();
}

struct Mismatch {
  std::int64_t n;
  std::int64_t computed;
  std::int64_t expected;
  friend bool operator==(const Mismatch&, const Mismatch&) = default;
};

/// Compares computed values (keyed by index) against the b-file on the
/// indices both contain.
inline std::vector<Mismatch> oeis_check(
    const std::map<std::int64_t, std::int64_t>& computed, const BFile& bfile) {
  std::vector<Mismatch> out;
  std::size_t overlap = 0;
  for (const auto& e : bfile.entries) {
    const auto it = computed.find(e.index);
    if (it == computed.end()) continue;
    ++overlap;
    if (it->second != e.value) out.push_back({e.index, it->second, e.value});
  }
  if (overlap == 0)
    throw InvalidArgument("no index in common with " +
                          (bfile.sequence_id.empty() ? std::string("b-file")
                                                     : bfile.sequence_id));
  return out;
}

/// Dense values: dense[i] is the computed term at index first_index + i.
inline std::vector<Mismatch> oeis_check(std::span<const std::int64_t> dense,
                                        std::int64_t first_index,
                                        const BFile& bfile) {
  std::vector<Mismatch> out;
  std::size_t overlap = 0;
  const auto last = first_index + static_cast<std::int64_t>(dense.size());
  for (const auto& e : bfile.entries) {
    if (e.index < first_index || e.index >= last) continue;
    ++overlap;
    const auto v = dense[static_cast<std::size_t>(e.index - first_index)];
    if (v != e.value) out.push_back({e.index, v, e.value});
  }
  if (overlap == 0) throw InvalidArgument("empty index overlap");
  return out;
}

inline std::vector<Mismatch> oeis_check(const SummationSeries& series,
                                        const BFile& bfile) {
  detail::require(series.is_exact(), "oeis_check needs exact sums");
  std::map<std::int64_t, std::int64_t> computed;
  for (std::size_t i = 0; i < series.size(); ++i)
    computed[static_cast<std::int64_t>(series.checkpoints()[i])] =
        series.exact(i);
  return oeis_check(computed, bfile);
}

}  // namespace arithstat
