// Copyright 2026 The sortbench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sortbench/bench/record.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace sortbench::bench {

std::string_view to_string(SortId id) noexcept {
  switch (id) {
    case SortId::kSeq:
      return "seq";
    case SortId::kCutoff:
      return "cutoff";
    case SortId::kSorted:
      return "sorted";
    case SortId::kMp:
      return "mp";
    case SortId::kMpi:
      return "mpi";
  }
  return "?";
}

std::string_view to_string(SubsortId id) noexcept {
  switch (id) {
    case SubsortId::kNone:
      return "none";
    case SubsortId::kSorted:
      return "sorted";
    case SubsortId::kMp:
      return "mp";
  }
  return "?";
}

SortId parse_sort_id(std::string_view s) {
  for (auto id : {SortId::kSeq, SortId::kCutoff, SortId::kSorted, SortId::kMp, SortId::kMpi}) {
    if (s == to_string(id)) return id;
  }
  throw std::invalid_argument("unknown sort '" + std::string(s) + "'");
}

SubsortId parse_subsort_id(std::string_view s) {
  for (auto id : {SubsortId::kNone, SubsortId::kSorted, SubsortId::kMp}) {
    if (s == to_string(id)) return id;
  }
  throw std::invalid_argument("unknown subsort '" + std::string(s) + "'");
}

double speedup(double t_ref, double t) {
  if (!(t_ref > 0.0) || !(t > 0.0)) {
    throw std::invalid_argument("speedup needs positive times");
  }
  return t_ref / t;
}

double efficiency(double s, std::size_t c) {
  if (c == 0) throw std::invalid_argument("efficiency needs at least one core");
  if (!(s > 0.0)) throw std::invalid_argument("efficiency needs a positive speedup");
  return s / static_cast<double>(c);
}

namespace {

std::string shortest(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string fixed3(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

void put_text(std::ostream& out, const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) {
    out << s;
    return;
  }
  out << '"';
  for (char ch : s) {
    if (ch == '"') out << '"';
    out << ch;
  }
  out << '"';
}

// Splits one record, honouring quotes; may consume several physical lines.
// Returns false at end of input.
bool read_fields(std::istream& in, std::vector<std::string>& fields, std::size_t& line_no) {
  fields.clear();
  std::string field;
  bool quoted = false;
  bool any = false;
  char ch;
  while (in.get(ch)) {
    any = true;
    if (quoted) {
      if (ch == '"') {
        if (in.peek() == '"') {
          in.get(ch);
          field += '"';
        } else {
          quoted = false;
        }
      } else {
        if (ch == '\n') ++line_no;
        field += ch;
      }
      continue;
    }
    if (ch == '"' && field.empty()) {
      quoted = true;
    } else if (ch == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else if (ch == '\n') {
      ++line_no;
      fields.push_back(std::move(field));
      return true;
    } else if (ch != '\r') {
      field += ch;
    }
  }
  if (quoted) throw CsvError("line " + std::to_string(line_no) + ": unterminated quote");
  if (!any) return false;
  fields.push_back(std::move(field));
  return true;
}

template <class T>
T parse_number(const std::string& s, const char* column, std::size_t line_no) {
  T v{};
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
    throw CsvError("line " + std::to_string(line_no) + ": bad " + column + " '" + s + "'");
  }
  return v;
}

std::optional<double> parse_ratio(const std::string& s, const char* column, std::size_t line_no) {
  if (s.empty()) return std::nullopt;
  return parse_number<double>(s, column, line_no);
}

}  // namespace

void emit_csv(std::span<const BenchRecord> records, std::ostream& out) {
  out << kCsvHeader << '\n';
  for (const auto& r : records) {
    out << r.p << ',' << r.c << ',' << r.size << ',' << to_string(r.sort) << ','
        << to_string(r.subsort) << ',' << fixed3(r.time) << ',';
    if (r.speedup) out << shortest(*r.speedup);
    out << ',';
    if (r.efficiency) out << shortest(*r.efficiency);
    out << ',';
    put_text(out, r.user);
    out << ',';
    put_text(out, r.node);
    out << '\n';
  }
}

void emit_csv_file(std::span<const BenchRecord> records, const std::filesystem::path& path) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw CsvError("cannot write " + path.string());
    emit_csv(records, out);
    out.flush();
    if (!out) throw CsvError("write failed for " + path.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw CsvError("cannot write " + path.string());
  }
}

std::vector<BenchRecord> parse_csv(std::istream& in) {
  std::vector<BenchRecord> out;
  std::vector<std::string> f;
  std::size_t line_no = 1;
  if (!read_fields(in, f, line_no)) return out;
  std::ostringstream header;
  for (std::size_t i = 0; i < f.size(); ++i) header << (i ? "," : "") << f[i];
  if (header.str() != kCsvHeader) throw CsvError("unexpected CSV header '" + header.str() + "'");

  for (;;) {
    const std::size_t row_line = line_no;
    if (!read_fields(in, f, line_no)) break;
    if (f.size() == 1 && f[0].empty()) continue;  // trailing blank line
    if (f.size() != 10) {
      throw CsvError("line " + std::to_string(row_line) + ": expected 10 fields, got " +
                     std::to_string(f.size()));
    }
    BenchRecord r;
    r.p = parse_number<std::size_t>(f[0], "p", row_line);
    r.c = parse_number<std::size_t>(f[1], "c", row_line);
    r.size = parse_number<std::size_t>(f[2], "size", row_line);
    try {
      r.sort = parse_sort_id(f[3]);
      r.subsort = parse_subsort_id(f[4]);
    } catch (const std::invalid_argument& e) {
      throw CsvError("line " + std::to_string(row_line) + ": " + e.what());
    }
    r.time = parse_number<double>(f[5], "time", row_line);
    r.speedup = parse_ratio(f[6], "speedup", row_line);
    r.efficiency = parse_ratio(f[7], "efficiency", row_line);
    r.user = f[8];
    r.node = f[9];
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<BenchRecord> parse_csv_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CsvError("cannot read " + path.string());
  return parse_csv(in);
}

}  // namespace sortbench::bench
