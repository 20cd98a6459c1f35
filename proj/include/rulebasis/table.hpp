#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rulebasis/bits.hpp"

namespace rulebasis {

/// Position of a column in a table. Column positions never change under row deletion.
using ColumnIndex = std::uint32_t;

/// Stable label of a row; survives deletions (1-based input line order by default).
using RowId = std::uint32_t;

/// Sorted, duplicate-free set of column positions.
class AttrSet {
 public:
  AttrSet() = default;
  AttrSet(std::initializer_list<ColumnIndex> cols) : AttrSet(std::vector<ColumnIndex>(cols)) {}
  explicit AttrSet(std::vector<ColumnIndex> cols);
  static AttrSet from_bits(const Bits& bits);

  const std::vector<ColumnIndex>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  bool contains(ColumnIndex c) const;
  bool is_subset_of(const AttrSet& o) const;
  AttrSet with(ColumnIndex c) const;
  AttrSet without(ColumnIndex c) const;
  Bits to_bits(std::size_t universe) const;

  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }

  auto operator<=>(const AttrSet&) const = default;
  bool operator==(const AttrSet&) const = default;

 private:
  std::vector<ColumnIndex> members_;
};

/// Immutable 0/1 matrix. Stored twice: row bitsets over columns and column
/// bitsets over rows, so both row scans and support counts are word-parallel.
class BinaryTable {
 public:
  BinaryTable() = default;
  /// `rows[r]` must have width `col_labels.size()`. Row and column labels must be distinct.
  BinaryTable(std::vector<Bits> rows, std::vector<RowId> row_ids, std::vector<std::string> col_labels,
              std::vector<bool> negated = {});

  /// Convenience for tests and small fixtures: rows of 0/1 ints, columns labelled 1..n, rows 1..m.
  static BinaryTable from_rows(const std::vector<std::vector<int>>& cells);

  std::size_t n_rows() const { return rows_.size(); }
  std::size_t n_cols() const { return col_labels_.size(); }

  bool cell(std::size_t row, ColumnIndex col) const { return rows_[row].test(col); }
  const Bits& row(std::size_t r) const { return rows_[r]; }
  const Bits& column(ColumnIndex c) const { return cols_[c]; }

  const std::vector<RowId>& row_ids() const { return row_ids_; }
  const std::vector<std::string>& col_labels() const { return col_labels_; }
  bool is_negated(ColumnIndex c) const { return negated_[c]; }
  /// Label with a leading '!' when the column has been complemented.
  std::string display_label(ColumnIndex c) const;

  std::optional<ColumnIndex> find_column(std::string_view label) const;
  std::optional<std::size_t> find_row(RowId id) const;
  /// Throws InvalidArgument when `c` is not a column of this table.
  void check_column(ColumnIndex c) const;

  bool operator==(const BinaryTable&) const = default;

 private:
  std::vector<Bits> rows_;
  std::vector<Bits> cols_;
  std::vector<RowId> row_ids_;
  std::vector<std::string> col_labels_;
  std::vector<bool> negated_;
};

/// Reads FIMI transactions: one line per row, whitespace-separated item ids.
/// Columns are the distinct items of the ingested lines in ascending numeric order.
BinaryTable load_fimi(std::istream& in, std::optional<std::size_t> max_rows = std::nullopt);

/// Reads a rectangular comma-separated table of "0"/"1" entries.
BinaryTable load_csv(std::istream& in, bool has_header);

/// Writes the table as CSV with a header row of column labels.
void write_csv(const BinaryTable& t, std::ostream& out);

/// Number of rows with a 1 in every column of `xs`; the empty set is supported by every row.
std::size_t support(const BinaryTable& t, const AttrSet& xs);

/// Rows having 1 in every column of `xs`, as a bitset over row positions.
Bits cover(const BinaryTable& t, const AttrSet& xs);

/// sup(x ∪ {b}) / sup(x), or nullopt when sup(x) = 0.
std::optional<double> confidence(const BinaryTable& t, const AttrSet& x, ColumnIndex b);

BinaryTable delete_rows(const BinaryTable& t, std::span<const RowId> rows);
BinaryTable negate_column(const BinaryTable& t, ColumnIndex b);
double density(const BinaryTable& t);

/// Row ids where all of `x` hold and `b` is 0, in table order.
std::vector<RowId> violating_rows(const BinaryTable& t, const AttrSet& x, ColumnIndex b);

}  // namespace rulebasis
