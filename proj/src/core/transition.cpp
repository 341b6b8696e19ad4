#include "core/transition.hpp"

#include <charconv>
#include <cmath>
#include <json.hpp>

#include "core/error.hpp"
#include "core/format.hpp"

namespace urank {

namespace {

// Sums within this window of 1 are silently renormalized; anything further
// off is rejected as a caller bug rather than papered over.
constexpr double kRenormWindow = 1e-9;
// After construction the sum is within this of 1; skipping the division for
// sums already this close avoids perturbing exact inputs.
constexpr double kUnitNormTolerance = 1e-12;

void kahan_add(double& sum, double& comp, double term) {
  const double adjusted = term - comp;
  const double next = sum + adjusted;
  comp = (next - sum) - adjusted;
  sum = next;
}

}  // namespace

ProbabilityVector ProbabilityVector::from_entries(std::vector<double> entries) {
  if (entries.empty())
    fail(ErrorCode::invalid_argument,
         "probability vector needs at least one entry");
  double sum = 0.0;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const double x = entries[i];
    if (!std::isfinite(x))
      fail(ErrorCode::invalid_argument,
           "non-finite entry at index " + std::to_string(i));
    if (x < 0.0)
      fail(ErrorCode::invalid_argument,
           "negative entry " + format_real(x) + " at index " + std::to_string(i));
    sum += x;
  }
  if (!(std::fabs(sum - 1.0) <= kRenormWindow))
    fail(ErrorCode::invalid_argument,
         "entries sum to " + format_real(sum) + ", outside the " +
             format_real(kRenormWindow) + " renormalization window around 1");
  if (std::fabs(sum - 1.0) > kUnitNormTolerance)
    for (double& x : entries) x /= sum;
  return ProbabilityVector(std::move(entries), unchecked{});
}

double ProbabilityVector::operator[](std::int64_t i) const {
  if (i < 0 || i >= dim())
    fail(ErrorCode::invalid_argument,
         "index " + std::to_string(i) + " out of range [0, " +
             std::to_string(dim()) + ")");
  return entries_[static_cast<std::size_t>(i)];
}

ProbabilityVector ProbabilityVector::from_text(std::string_view text) {
  std::vector<double> entries;
  std::int64_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(
        pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;

    while (!line.empty() && (line.front() == ' ' || line.front() == '\t' ||
                             line.front() == '\r'))
      line.remove_prefix(1);
    while (!line.empty() && (line.back() == ' ' || line.back() == '\t' ||
                             line.back() == '\r'))
      line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;

    double value = 0;
    const char* begin = line.data();
    const char* end = begin + line.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end)
      fail(ErrorCode::parse, "line " + std::to_string(line_no) +
                                 ": expected one decimal value, got '" +
                                 std::string(line) + "'");
    entries.push_back(value);
  }
  if (entries.empty())
    fail(ErrorCode::parse, "vector text contains no values");
  return from_entries(std::move(entries));
}

ProbabilityVector ProbabilityVector::from_json(std::string_view text) {
  nlohmann::json parsed = nlohmann::json::parse(text, nullptr, false);
  if (parsed.is_discarded() || !parsed.is_array())
    fail(ErrorCode::parse, "vector JSON must be a flat array of numbers");
  std::vector<double> entries;
  entries.reserve(parsed.size());
  for (const auto& item : parsed) {
    if (!item.is_number())
      fail(ErrorCode::parse, "vector JSON must contain numbers only");
    entries.push_back(item.get<double>());
  }
  if (entries.empty())
    fail(ErrorCode::parse, "vector JSON array is empty");
  return from_entries(std::move(entries));
}

std::string ProbabilityVector::to_text() const {
  std::string out;
  for (double x : entries_) {
    out += format_real(x);
    out += '\n';
  }
  return out;
}

std::string ProbabilityVector::to_json() const {
  nlohmann::json array = nlohmann::json::array();
  for (double x : entries_) array.push_back(x);
  return array.dump();
}

// ---- row-stochastic matrices -----------------------------------------

RowStochasticMatrix transition_matrix(const Graph& g) {
  const Vertex n = g.order();
  for (Vertex v = 0; v < n; ++v)
    if (g.degree(v) == 0)
      fail(ErrorCode::isolated_vertex,
           "vertex " + std::to_string(v) +
               " is isolated; the walk has nowhere to go (degree 0)");

  RowStochasticMatrix a;
  a.n_ = n;
  a.row_ptr_.assign(static_cast<std::size_t>(n) + 1, 0);
  a.row_weight_.resize(static_cast<std::size_t>(n));
  a.col_.reserve(static_cast<std::size_t>(2 * g.size()));
  for (Vertex v = 0; v < n; ++v) {
    const auto nbrs = g.neighbors(v);
    a.row_ptr_[static_cast<std::size_t>(v) + 1] =
        a.row_ptr_[static_cast<std::size_t>(v)] +
        static_cast<std::int64_t>(nbrs.size());
    a.col_.insert(a.col_.end(), nbrs.begin(), nbrs.end());
    a.row_weight_[static_cast<std::size_t>(v)] =
        1.0 / static_cast<double>(nbrs.size());
  }
  return a;
}

RowStochasticMatrix RowStochasticMatrix::from_rows(
    Vertex n, std::span<const std::vector<RowEntry>> rows) {
  if (n < 1)
    fail(ErrorCode::invalid_argument, "matrix dimension must be positive");
  if (static_cast<Vertex>(rows.size()) != n)
    fail(ErrorCode::dimension_mismatch,
         "expected " + std::to_string(n) + " rows, got " +
             std::to_string(rows.size()));

  RowStochasticMatrix a;
  a.n_ = n;
  a.row_ptr_.assign(static_cast<std::size_t>(n) + 1, 0);
  for (Vertex i = 0; i < n; ++i) {
    const auto& row = rows[static_cast<std::size_t>(i)];
    const std::string where = "row " + std::to_string(i);
    Vertex prev = -1;
    double sum = 0.0;
    for (const RowEntry& entry : row) {
      if (entry.col < 0 || entry.col >= n)
        fail(ErrorCode::invalid_argument,
             where + ": column " + std::to_string(entry.col) + " out of range");
      if (entry.col == i)
        fail(ErrorCode::invalid_argument,
             where + ": diagonal entries must be zero");
      if (entry.col <= prev)
        fail(ErrorCode::invalid_argument,
             where + ": columns must be strictly ascending");
      if (!(entry.value > 0.0) || !std::isfinite(entry.value))
        fail(ErrorCode::invalid_argument,
             where + ": stored entries must be strictly positive");
      prev = entry.col;
      sum += entry.value;
      a.col_.push_back(entry.col);
      a.value_.push_back(entry.value);
    }
    if (std::fabs(sum - 1.0) > kUnitNormTolerance)
      fail(ErrorCode::invalid_argument,
           where + " sums to " + format_real(sum) + ", not 1");
    a.row_ptr_[static_cast<std::size_t>(i) + 1] =
        static_cast<std::int64_t>(a.col_.size());
  }
  return a;
}

void RowStochasticMatrix::apply_transposed(std::span<const double> x,
                                           std::span<double> y) const {
  if (static_cast<Vertex>(x.size()) != n_ || static_cast<Vertex>(y.size()) != n_)
    fail(ErrorCode::dimension_mismatch,
         "apply_transposed: vector length " + std::to_string(x.size()) +
             " does not match matrix dimension " + std::to_string(n_));
  std::fill(y.begin(), y.end(), 0.0);
  std::vector<double> comp(static_cast<std::size_t>(n_), 0.0);
  const bool shared_weight = !row_weight_.empty();
  for (Vertex i = 0; i < n_; ++i) {
    const double xi = x[static_cast<std::size_t>(i)];
    const double wi = shared_weight ? row_weight_[static_cast<std::size_t>(i)] : 0.0;
    for (std::int64_t k = row_ptr_[static_cast<std::size_t>(i)];
         k < row_ptr_[static_cast<std::size_t>(i) + 1]; ++k) {
      const std::size_t j = static_cast<std::size_t>(col_[static_cast<std::size_t>(k)]);
      const double weight =
          shared_weight ? wi : value_[static_cast<std::size_t>(k)];
      kahan_add(y[j], comp[j], weight * xi);
    }
  }
}

std::vector<double> RowStochasticMatrix::apply_transposed(
    std::span<const double> x) const {
  std::vector<double> y(static_cast<std::size_t>(n_), 0.0);
  apply_transposed(x, y);
  return y;
}

// ---- canonical vectors -----------------------------------------------

ProbabilityVector degree_distribution(const Graph& g) {
  if (g.size() == 0)
    fail(ErrorCode::invalid_argument,
         "degree distribution undefined: graph has no edges");
  const double m2 = static_cast<double>(2 * g.size());
  std::vector<double> entries(static_cast<std::size_t>(g.order()));
  for (Vertex v = 0; v < g.order(); ++v)
    entries[static_cast<std::size_t>(v)] = static_cast<double>(g.degree(v)) / m2;
  // For a k-regular graph each entry is the correctly rounded quotient
  // k/(nk) = 1/n, so this matches uniform_vector(n) bit for bit.
  return ProbabilityVector::from_entries(std::move(entries));
}

ProbabilityVector uniform_vector(std::int64_t n) {
  if (n < 1)
    fail(ErrorCode::invalid_argument, "uniform vector needs n >= 1");
  std::vector<double> entries(static_cast<std::size_t>(n),
                              1.0 / static_cast<double>(n));
  return ProbabilityVector::from_entries(std::move(entries));
}

}  // namespace urank
