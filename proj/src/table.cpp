#include "rulebasis/table.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <unordered_set>

#include "rulebasis/error.hpp"

namespace rulebasis {

AttrSet::AttrSet(std::vector<ColumnIndex> cols) : members_(std::move(cols)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

AttrSet AttrSet::from_bits(const Bits& bits) {
  AttrSet s;
  for (std::size_t i = bits.find_first(); i != Bits::npos; i = bits.find_next(i))
    s.members_.push_back(static_cast<ColumnIndex>(i));
  return s;
}

bool AttrSet::contains(ColumnIndex c) const { return std::binary_search(members_.begin(), members_.end(), c); }

bool AttrSet::is_subset_of(const AttrSet& o) const {
  return std::includes(o.members_.begin(), o.members_.end(), members_.begin(), members_.end());
}

AttrSet AttrSet::with(ColumnIndex c) const {
  auto v = members_;
  v.push_back(c);
  return AttrSet(std::move(v));
}

AttrSet AttrSet::without(ColumnIndex c) const {
  AttrSet s;
  for (auto m : members_)
    if (m != c) s.members_.push_back(m);
  return s;
}

Bits AttrSet::to_bits(std::size_t universe) const {
  Bits b(universe);
  for (auto m : members_) b.set(m);
  return b;
}

BinaryTable::BinaryTable(std::vector<Bits> rows, std::vector<RowId> row_ids, std::vector<std::string> col_labels,
                         std::vector<bool> negated)
    : rows_(std::move(rows)), row_ids_(std::move(row_ids)), col_labels_(std::move(col_labels)),
      negated_(std::move(negated)) {
  if (negated_.empty()) negated_.assign(col_labels_.size(), false);
  if (negated_.size() != col_labels_.size()) throw InvalidArgument("negation flags do not match column count");
  if (row_ids_.size() != rows_.size()) throw InvalidArgument("row id count does not match row count");
  for (const auto& r : rows_)
    if (r.size() != col_labels_.size()) throw InvalidArgument("row width does not match column count");
  if (std::set<RowId>(row_ids_.begin(), row_ids_.end()).size() != row_ids_.size())
    throw InvalidArgument("row ids must be distinct");
  if (std::set<std::string>(col_labels_.begin(), col_labels_.end()).size() != col_labels_.size())
    throw InvalidArgument("column labels must be distinct");

  cols_.assign(col_labels_.size(), Bits(rows_.size()));
  for (std::size_t r = 0; r < rows_.size(); ++r)
    for (std::size_t c = rows_[r].find_first(); c != Bits::npos; c = rows_[r].find_next(c)) cols_[c].set(r);
}

BinaryTable BinaryTable::from_rows(const std::vector<std::vector<int>>& cells) {
  const std::size_t ncols = cells.empty() ? 0 : cells.front().size();
  std::vector<Bits> rows;
  std::vector<RowId> ids;
  for (std::size_t r = 0; r < cells.size(); ++r) {
    if (cells[r].size() != ncols) throw InvalidArgument("ragged fixture row " + std::to_string(r + 1));
    Bits b(ncols);
    for (std::size_t c = 0; c < ncols; ++c) {
      if (cells[r][c] != 0 && cells[r][c] != 1) throw InvalidArgument("fixture entry not binary");
      b.assign(c, cells[r][c] == 1);
    }
    rows.push_back(std::move(b));
    ids.push_back(static_cast<RowId>(r + 1));
  }
  std::vector<std::string> labels;
  for (std::size_t c = 0; c < ncols; ++c) labels.push_back(std::to_string(c + 1));
  return BinaryTable(std::move(rows), std::move(ids), std::move(labels));
}

std::string BinaryTable::display_label(ColumnIndex c) const {
  return negated_[c] ? "!" + col_labels_[c] : col_labels_[c];
}

std::optional<ColumnIndex> BinaryTable::find_column(std::string_view label) const {
  for (std::size_t c = 0; c < col_labels_.size(); ++c)
    if (col_labels_[c] == label) return static_cast<ColumnIndex>(c);
  return std::nullopt;
}

std::optional<std::size_t> BinaryTable::find_row(RowId id) const {
  for (std::size_t r = 0; r < row_ids_.size(); ++r)
    if (row_ids_[r] == id) return r;
  return std::nullopt;
}

void BinaryTable::check_column(ColumnIndex c) const {
  if (c >= n_cols()) throw InvalidArgument("unknown column index " + std::to_string(c));
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  return s;
}

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    auto pos = line.find(',', start);
    out.push_back(trim(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string unquote(std::string_view s) {
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') {
    std::string out;
    for (std::size_t i = 1; i + 1 < s.size(); ++i) {
      out.push_back(s[i]);
      if (s[i] == '"' && s[i + 1] == '"') ++i;
    }
    return out;
  }
  return std::string(s);
}

}  // namespace

BinaryTable load_fimi(std::istream& in, std::optional<std::size_t> max_rows) {
  std::vector<std::vector<std::uint64_t>> transactions;
  std::string line;
  std::size_t line_no = 0;
  while ((!max_rows || transactions.size() < *max_rows) && std::getline(in, line)) {
    ++line_no;
    std::vector<std::uint64_t> items;
    std::string_view rest(line);
    while (true) {
      auto first = rest.find_first_not_of(" \t\r\f\v");
      if (first == std::string_view::npos) break;
      rest.remove_prefix(first);
      auto len = rest.find_first_of(" \t\r\f\v");
      auto token = rest.substr(0, len);
      std::uint64_t value = 0;
      auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
      if (ec != std::errc{} || ptr != token.data() + token.size())
        throw ParseError("line " + std::to_string(line_no) + ": item '" + std::string(token) +
                         "' is not a non-negative integer");
      items.push_back(value);
      if (len == std::string_view::npos) break;
      rest.remove_prefix(len);
    }
    if (items.empty()) continue;
    std::sort(items.begin(), items.end());
    items.erase(std::unique(items.begin(), items.end()), items.end());
    transactions.push_back(std::move(items));
  }
  if (transactions.empty()) throw ParseError("FIMI input contains no transactions");

  std::map<std::uint64_t, ColumnIndex> index;
  for (const auto& tx : transactions)
    for (auto item : tx) index.emplace(item, 0);
  std::vector<std::string> labels;
  for (auto& [item, col] : index) {
    col = static_cast<ColumnIndex>(labels.size());
    labels.push_back(std::to_string(item));
  }
  std::vector<Bits> rows;
  std::vector<RowId> ids;
  for (std::size_t r = 0; r < transactions.size(); ++r) {
    Bits b(labels.size());
    for (auto item : transactions[r]) b.set(index.at(item));
    rows.push_back(std::move(b));
    ids.push_back(static_cast<RowId>(r + 1));
  }
  return BinaryTable(std::move(rows), std::move(ids), std::move(labels));
}

BinaryTable load_csv(std::istream& in, bool has_header) {
  std::string line;
  std::vector<std::string> labels;
  std::vector<Bits> rows;
  std::vector<RowId> ids;
  std::size_t line_no = 0;
  std::optional<std::size_t> width;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto fields = split_commas(line);
    if (has_header && !width) {
      for (auto f : fields) labels.push_back(unquote(f));
      width = labels.size();
      continue;
    }
    if (!width) width = fields.size();
    if (fields.size() != *width)
      throw ParseError("row " + std::to_string(line_no) + ": expected " + std::to_string(*width) + " entries, found " +
                       std::to_string(fields.size()));
    Bits b(*width);
    for (std::size_t c = 0; c < fields.size(); ++c) {
      if (fields[c] == "1") {
        b.set(c);
      } else if (fields[c] != "0") {
        throw ParseError("row " + std::to_string(line_no) + ", column " + std::to_string(c + 1) + ": entry '" +
                         std::string(fields[c]) + "' is not binary");
      }
    }
    rows.push_back(std::move(b));
    ids.push_back(static_cast<RowId>(rows.size()));
  }
  if (!width) throw ParseError("CSV input is empty");
  if (!has_header)
    for (std::size_t c = 0; c < *width; ++c) labels.push_back(std::to_string(c + 1));
  try {
    return BinaryTable(std::move(rows), std::move(ids), std::move(labels));
  } catch (const InvalidArgument& e) {
    throw ParseError(std::string("CSV header: ") + e.what());
  }
}

void write_csv(const BinaryTable& t, std::ostream& out) {
  for (std::size_t c = 0; c < t.n_cols(); ++c) out << (c ? "," : "") << t.col_labels()[c];
  out << '\n';
  for (std::size_t r = 0; r < t.n_rows(); ++r) {
    for (std::size_t c = 0; c < t.n_cols(); ++c)
      out << (c ? "," : "") << (t.cell(r, static_cast<ColumnIndex>(c)) ? '1' : '0');
    out << '\n';
  }
}

Bits cover(const BinaryTable& t, const AttrSet& xs) {
  auto rows = Bits::ones(t.n_rows());
  for (auto c : xs) {
    t.check_column(c);
    rows &= t.column(c);
  }
  return rows;
}

std::size_t support(const BinaryTable& t, const AttrSet& xs) { return cover(t, xs).count(); }

std::optional<double> confidence(const BinaryTable& t, const AttrSet& x, ColumnIndex b) {
  t.check_column(b);
  if (x.contains(b)) throw InvalidArgument("consequent belongs to the antecedent");
  auto rows = cover(t, x);
  const auto denom = rows.count();
  if (denom == 0) return std::nullopt;
  return static_cast<double>(rows.and_count(t.column(b))) / static_cast<double>(denom);
}

BinaryTable delete_rows(const BinaryTable& t, std::span<const RowId> rows) {
  Bits drop(t.n_rows());
  for (auto id : rows) {
    auto pos = t.find_row(id);
    if (!pos) throw InvalidArgument("unknown row id " + std::to_string(id));
    drop.set(*pos);
  }
  std::vector<Bits> kept;
  std::vector<RowId> ids;
  for (std::size_t r = 0; r < t.n_rows(); ++r) {
    if (drop.test(r)) continue;
    kept.push_back(t.row(r));
    ids.push_back(t.row_ids()[r]);
  }
  std::vector<bool> neg(t.n_cols());
  for (std::size_t c = 0; c < t.n_cols(); ++c) neg[c] = t.is_negated(static_cast<ColumnIndex>(c));
  return BinaryTable(std::move(kept), std::move(ids), t.col_labels(), std::move(neg));
}

BinaryTable negate_column(const BinaryTable& t, ColumnIndex b) {
  t.check_column(b);
  std::vector<Bits> rows;
  rows.reserve(t.n_rows());
  for (std::size_t r = 0; r < t.n_rows(); ++r) {
    rows.push_back(t.row(r));
    rows.back().flip(b);
  }
  std::vector<bool> neg(t.n_cols());
  for (std::size_t c = 0; c < t.n_cols(); ++c) neg[c] = t.is_negated(static_cast<ColumnIndex>(c));
  neg[b] = !neg[b];
  return BinaryTable(std::move(rows), t.row_ids(), t.col_labels(), std::move(neg));
}

double density(const BinaryTable& t) {
  if (t.n_rows() == 0 || t.n_cols() == 0) throw InvalidArgument("density of an empty table is undefined");
  std::size_t ones = 0;
  for (std::size_t r = 0; r < t.n_rows(); ++r) ones += t.row(r).count();
  return static_cast<double>(ones) / static_cast<double>(t.n_rows() * t.n_cols());
}

std::vector<RowId> violating_rows(const BinaryTable& t, const AttrSet& x, ColumnIndex b) {
  t.check_column(b);
  if (x.contains(b)) throw InvalidArgument("consequent belongs to the antecedent");
  auto rows = cover(t, x) - t.column(b);
  std::vector<RowId> out;
  for (auto r : rows.to_indices()) out.push_back(t.row_ids()[r]);
  return out;
}

}  // namespace rulebasis
