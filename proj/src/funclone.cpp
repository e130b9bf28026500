#include "latclone/funclone.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <unordered_set>

#include "latclone/error.hpp"

namespace latclone {

namespace {

constexpr std::uint64_t kMaxCodes = std::uint64_t{1} << 40;
constexpr std::uint64_t kBitsetCodes = std::uint64_t{1} << 24;

void require_same_carrier(std::size_t a, std::size_t b) {
  if (a != b) throw Error(Errc::arity_mismatch, "operations live on different carriers");
}

// Odometer over tuples of indices in [0, bound)^width.
bool advance(std::vector<std::size_t>& digits, std::size_t bound) {
  for (std::size_t i = digits.size(); i-- > 0;) {
    if (++digits[i] < bound) return true;
    digits[i] = 0;
  }
  return false;
}

std::string key_of(std::span<const Elem> values) {
  return std::string(reinterpret_cast<const char*>(values.data()), values.size());
}

bool is_infix(const std::string& symbol) { return symbol == "/\\" || symbol == "\\/"; }

std::string wrap(const std::string& term) {
  return term.find(' ') == std::string::npos ? term : "(" + term + ")";
}

std::string apply_name(const std::string& name, const std::vector<std::string>& args) {
  if (name.empty()) return {};
  if (args.size() == 2 && is_infix(name)) return wrap(args[0]) + " " + name + " " + wrap(args[1]);
  std::string out = name + "(";
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i > 0) out += ", ";
    out += args[i];
  }
  return out + ")";
}

}  // namespace

std::uint64_t power_size(std::size_t carrier, std::size_t arity) {
  std::uint64_t result = 1;
  for (std::size_t i = 0; i < arity; ++i) {
    result *= carrier;
    if (result > kMaxCodes) {
      throw Error(Errc::limit_exceeded, std::to_string(carrier) + "^" + std::to_string(arity) +
                                            " tuples is too many to tabulate");
    }
  }
  return result;
}

std::uint64_t encode_tuple(std::span<const Elem> tuple, std::size_t carrier) {
  std::uint64_t code = 0;
  for (auto v : tuple) code = code * carrier + v;
  return code;
}

void decode_tuple(std::uint64_t code, std::size_t carrier, std::span<Elem> out) {
  for (std::size_t i = out.size(); i-- > 0;) {
    out[i] = static_cast<Elem>(code % carrier);
    code /= carrier;
  }
}

OpTable::OpTable(std::size_t arity, std::size_t carrier, std::vector<Elem> values,
                 std::string provenance)
    : arity_(arity), carrier_(carrier), values_(std::move(values)),
      provenance_(std::move(provenance)) {
  if (arity_ == 0) throw Error(Errc::bad_index, "operations must have arity at least 1");
  if (carrier_ == 0 || carrier_ > kMaxCarrier) throw Error(Errc::bad_spec, "bad carrier size");
  if (values_.size() != power_size(carrier_, arity_)) {
    throw Error(Errc::bad_spec, "operation table has " + std::to_string(values_.size()) +
                                    " entries, expected |A|^arity");
  }
  for (auto v : values_) {
    if (v >= carrier_) throw Error(Errc::bad_spec, "operation table value out of range");
  }
}

OpTable OpTable::from_function(std::size_t arity, std::size_t carrier,
                               const std::function<Elem(std::span<const Elem>)>& fn,
                               std::string provenance) {
  const auto total = power_size(carrier, arity);
  std::vector<Elem> values(total);
  Tuple args(arity);
  for (std::uint64_t c = 0; c < total; ++c) {
    decode_tuple(c, carrier, args);
    values[c] = fn(args);
  }
  return OpTable(arity, carrier, std::move(values), std::move(provenance));
}

OpTable OpTable::with_provenance(std::string provenance) const {
  OpTable copy = *this;
  copy.provenance_ = std::move(provenance);
  return copy;
}

Elem OpTable::operator()(std::span<const Elem> args) const {
  if (args.size() != arity_) throw Error(Errc::arity_mismatch, "wrong number of arguments");
  return values_[encode_tuple(args, carrier_)];
}

bool OpTable::operator==(const OpTable& other) const noexcept {
  return arity_ == other.arity_ && carrier_ == other.carrier_ && values_ == other.values_;
}

bool OpTable::operator<(const OpTable& other) const noexcept {
  if (carrier_ != other.carrier_) return carrier_ < other.carrier_;
  if (arity_ != other.arity_) return arity_ < other.arity_;
  return values_ < other.values_;
}

Relation::Relation(std::size_t arity, std::size_t carrier) : arity_(arity), carrier_(carrier) {
  if (arity_ == 0) throw Error(Errc::bad_index, "relations must have arity at least 1");
  if (carrier_ == 0 || carrier_ > kMaxCarrier) throw Error(Errc::bad_spec, "bad carrier size");
  power_size(carrier_, arity_);
  index();
}

Relation::Relation(std::size_t arity, std::size_t carrier, const std::vector<Tuple>& tuples)
    : Relation(arity, carrier) {
  codes_.reserve(tuples.size());
  for (const auto& t : tuples) {
    if (t.size() != arity_) throw Error(Errc::arity_mismatch, "tuple length differs from arity");
    for (auto v : t) {
      if (v >= carrier_) throw Error(Errc::bad_spec, "tuple entry out of range");
    }
    codes_.push_back(encode_tuple(t, carrier_));
  }
  std::sort(codes_.begin(), codes_.end());
  codes_.erase(std::unique(codes_.begin(), codes_.end()), codes_.end());
  index();
}

Relation Relation::full(std::size_t arity, std::size_t carrier) {
  const auto total = power_size(carrier, arity);
  std::vector<std::uint64_t> codes(total);
  for (std::uint64_t c = 0; c < total; ++c) codes[c] = c;
  return from_codes(arity, carrier, std::move(codes));
}

Relation Relation::from_codes(std::size_t arity, std::size_t carrier,
                              std::vector<std::uint64_t> codes) {
  Relation r(arity, carrier);
  const auto total = power_size(carrier, arity);
  std::sort(codes.begin(), codes.end());
  codes.erase(std::unique(codes.begin(), codes.end()), codes.end());
  if (!codes.empty() && codes.back() >= total) throw Error(Errc::bad_spec, "tuple code out of range");
  r.codes_ = std::move(codes);
  r.index();
  return r;
}

void Relation::index() {
  flat_.assign(codes_.size() * arity_, 0);
  for (std::size_t i = 0; i < codes_.size(); ++i) {
    decode_tuple(codes_[i], carrier_, std::span<Elem>(flat_).subspan(i * arity_, arity_));
  }
  const auto total = power_size(carrier_, arity_);
  bits_.clear();
  if (total <= kBitsetCodes) {
    bits_.assign(total, false);
    for (auto c : codes_) bits_[c] = true;
  }
}

Tuple Relation::tuple(std::size_t i) const {
  const auto r = row(i);
  return Tuple(r.begin(), r.end());
}

std::vector<Tuple> Relation::tuples() const {
  std::vector<Tuple> out;
  out.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) out.push_back(tuple(i));
  return out;
}

bool Relation::contains_code(std::uint64_t code) const {
  if (!bits_.empty()) return code < bits_.size() && bits_[code];
  return std::binary_search(codes_.begin(), codes_.end(), code);
}

bool Relation::contains(std::span<const Elem> tuple) const {
  if (tuple.size() != arity_) return false;
  for (auto v : tuple) {
    if (v >= carrier_) return false;
  }
  return contains_code(encode_tuple(tuple, carrier_));
}

bool Relation::subset_of(const Relation& other) const {
  if (arity_ != other.arity_ || carrier_ != other.carrier_) return false;
  return std::all_of(codes_.begin(), codes_.end(),
                     [&](std::uint64_t c) { return other.contains_code(c); });
}

bool Relation::operator==(const Relation& other) const noexcept {
  return arity_ == other.arity_ && carrier_ == other.carrier_ && codes_ == other.codes_;
}

OpTable projection(std::size_t arity, std::size_t index, std::size_t carrier) {
  if (arity == 0 || index >= arity) {
    throw Error(Errc::bad_index, "projection index " + std::to_string(index + 1) +
                                     " outside 1.." + std::to_string(arity));
  }
  return OpTable::from_function(
      arity, carrier, [index](std::span<const Elem> x) { return x[index]; },
      "x" + std::to_string(index + 1));
}

OpTable compose(const OpTable& f, std::span<const OpTable> gs) {
  if (gs.size() != f.arity()) {
    throw Error(Errc::arity_mismatch, "composition needs one inner operation per argument");
  }
  const auto k = gs.front().arity();
  for (const auto& g : gs) {
    if (g.arity() != k) throw Error(Errc::arity_mismatch, "inner operations differ in arity");
    require_same_carrier(g.carrier_size(), f.carrier_size());
  }
  const auto total = power_size(f.carrier_size(), k);
  std::vector<Elem> values(total);
  Tuple inner(f.arity());
  for (std::uint64_t c = 0; c < total; ++c) {
    for (std::size_t i = 0; i < gs.size(); ++i) inner[i] = gs[i].at(c);
    values[c] = f(inner);
  }
  return OpTable(k, f.carrier_size(), std::move(values));
}

OpTable pad_and_identify(const OpTable& f, std::size_t arity,
                         std::span<const std::size_t> assignment) {
  if (assignment.size() != f.arity()) {
    throw Error(Errc::bad_assignment, "assignment must cover every argument of the operation");
  }
  for (auto z : assignment) {
    if (z >= arity) throw Error(Errc::bad_assignment, "assignment targets a missing variable");
  }
  const std::vector<std::size_t> z(assignment.begin(), assignment.end());
  Tuple args(f.arity());
  return OpTable::from_function(arity, f.carrier_size(), [&](std::span<const Elem> x) {
    for (std::size_t i = 0; i < z.size(); ++i) args[i] = x[z[i]];
    return f(args);
  });
}

Relation graph(const OpTable& f) {
  const auto total = power_size(f.carrier_size(), f.arity());
  std::vector<std::uint64_t> codes(total);
  for (std::uint64_t c = 0; c < total; ++c) codes[c] = c * f.carrier_size() + f.at(c);
  return Relation::from_codes(f.arity() + 1, f.carrier_size(), std::move(codes));
}

PreserveVerdict preserves(const OpTable& f, const Relation& rho) {
  require_same_carrier(f.carrier_size(), rho.carrier_size());
  PreserveVerdict verdict;
  if (rho.empty()) return verdict;
  const auto n = f.arity();
  const auto h = rho.arity();
  std::vector<std::size_t> pick(n, 0);
  Tuple column(n);
  Tuple image(h);
  do {
    for (std::size_t pos = 0; pos < h; ++pos) {
      for (std::size_t i = 0; i < n; ++i) column[i] = rho.row(pick[i])[pos];
      image[pos] = f(column);
    }
    if (!rho.contains(image)) {
      verdict.preserves = false;
      std::vector<Tuple> args;
      for (auto p : pick) args.push_back(rho.tuple(p));
      verdict.witness = std::move(args);
      return verdict;
    }
  } while (advance(pick, rho.size()));
  return verdict;
}

CommuteVerdict commute(const OpTable& f, const OpTable& g) {
  require_same_carrier(f.carrier_size(), g.carrier_size());
  const auto A = f.carrier_size();
  const auto n = f.arity();
  const auto m = g.arity();
  const auto total = power_size(A, n * m);
  CommuteVerdict verdict;
  Tuple cells(n * m);
  Tuple row_values(n);
  Tuple column_values(m);
  Tuple buffer;
  for (std::uint64_t c = 0; c < total && verdict.commute; ++c) {
    decode_tuple(c, A, cells);
    for (std::size_t i = 0; i < n; ++i) {
      row_values[i] = g(std::span<const Elem>(cells).subspan(i * m, m));
    }
    buffer.assign(n, 0);
    for (std::size_t j = 0; j < m; ++j) {
      for (std::size_t i = 0; i < n; ++i) buffer[i] = cells[i * m + j];
      column_values[j] = f(buffer);
    }
    if (f(row_values) != g(column_values)) {
      verdict.commute = false;
      std::vector<Tuple> matrix;
      for (std::size_t i = 0; i < n; ++i) {
        matrix.emplace_back(cells.begin() + static_cast<std::ptrdiff_t>(i * m),
                            cells.begin() + static_cast<std::ptrdiff_t>((i + 1) * m));
      }
      verdict.witness = std::move(matrix);
    }
  }
  if (verdict.commute != preserves(f, graph(g)).preserves) {
    throw std::logic_error("commutation and graph preservation disagree");
  }
  return verdict;
}

Limits Limits::from_env() {
  Limits limits;
  if (const char* raw = std::getenv("LATCLONE_LIMIT")) {
    try {
      const auto v = static_cast<std::size_t>(std::stoull(raw));
      limits.clone = limits.centralizer = limits.closure = v;
    } catch (const std::exception&) {
      throw Error(Errc::bad_spec, "LATCLONE_LIMIT must be a positive integer");
    }
  }
  return limits;
}

std::vector<OpTable> clone_slice(std::span<const OpTable> generators, std::size_t arity,
                                 std::size_t limit) {
  if (arity == 0) throw Error(Errc::bad_index, "clone slices need arity at least 1");
  if (generators.empty()) throw Error(Errc::bad_spec, "no generators given");
  const auto A = generators.front().carrier_size();
  for (const auto& g : generators) require_same_carrier(g.carrier_size(), A);
  const auto total = power_size(A, arity);

  std::vector<std::vector<Elem>> tables;
  std::vector<std::string> names;
  std::unordered_set<std::string> seen;
  const auto add = [&](std::vector<Elem> values, std::string name) {
    if (!seen.insert(key_of(values)).second) return;
    if (tables.size() >= limit) {
      throw Error(Errc::limit_exceeded, "clone slice exceeds " + std::to_string(limit) +
                                            " operations");
    }
    tables.push_back(std::move(values));
    names.push_back(std::move(name));
  };
  for (std::size_t i = 0; i < arity; ++i) {
    const auto p = projection(arity, i, A);
    add(std::vector<Elem>(p.values().begin(), p.values().end()), p.provenance());
  }

  std::size_t start = 0;
  while (start < tables.size()) {
    const auto end = tables.size();
    for (const auto& g : generators) {
      const auto m = g.arity();
      std::vector<std::size_t> pick(m, 0);
      Tuple args(m);
      do {
        if (std::all_of(pick.begin(), pick.end(), [&](std::size_t p) { return p < start; })) {
          continue;
        }
        std::vector<Elem> values(total);
        for (std::uint64_t c = 0; c < total; ++c) {
          for (std::size_t i = 0; i < m; ++i) args[i] = tables[pick[i]][c];
          values[c] = g(args);
        }
        std::vector<std::string> arg_names;
        for (auto p : pick) arg_names.push_back(names[p]);
        add(std::move(values), apply_name(g.provenance(), arg_names));
      } while (advance(pick, end));
    }
    start = end;
  }

  std::vector<OpTable> result;
  result.reserve(tables.size());
  for (std::size_t i = 0; i < tables.size(); ++i) {
    result.emplace_back(arity, A, std::move(tables[i]), std::move(names[i]));
  }
  std::sort(result.begin(), result.end());
  return result;
}

namespace {

// Depth-first search for k-ary operations f with
//   f(g(x1, ..., xm)) = g(f(x1), ..., f(xm))   for every generator g,
// where the xi range over A^k and g acts componentwise. Every assignment of a
// cell is propagated eagerly through these equalities.
class CentralizerSearch {
 public:
  CentralizerSearch(std::span<const OpTable> generators, std::size_t arity, std::size_t limit)
      : gens_(generators), k_(arity), limit_(limit) {
    A_ = generators.front().carrier_size();
    points_ = static_cast<std::size_t>(power_size(A_, k_));
    coords_.resize(points_ * k_);
    for (std::size_t p = 0; p < points_; ++p) {
      decode_tuple(p, A_, std::span<Elem>(coords_).subspan(p * k_, k_));
    }
    value_.assign(points_, kUnset);
    order_cells();
  }

  std::vector<OpTable> run() {
    search(0);
    std::sort(found_.begin(), found_.end());
    return std::move(found_);
  }

 private:
  static constexpr int kUnset = -1;

  // Cells that no generator produces from other cells come first: once they
  // are fixed, propagation usually determines everything else.
  void order_cells() {
    std::vector<bool> reducible(points_, false);
    for (const auto& g : gens_) {
      const auto m = g.arity();
      if (m < 2) continue;
      std::vector<std::size_t> pick(m, 0);
      do {
        const auto target = apply(g, pick);
        if (std::find(pick.begin(), pick.end(), target) == pick.end()) reducible[target] = true;
      } while (advance(pick, points_));
    }
    for (std::size_t p = 0; p < points_; ++p) {
      if (!reducible[p]) order_.push_back(p);
    }
    for (std::size_t p = 0; p < points_; ++p) {
      if (reducible[p]) order_.push_back(p);
    }
  }

  // Componentwise application of g to the listed points of A^k.
  std::size_t apply(const OpTable& g, const std::vector<std::size_t>& cells) {
    args_.resize(g.arity());
    std::uint64_t code = 0;
    for (std::size_t i = 0; i < k_; ++i) {
      for (std::size_t j = 0; j < cells.size(); ++j) args_[j] = coords_[cells[j] * k_ + i];
      code = code * A_ + g(args_);
    }
    return static_cast<std::size_t>(code);
  }

  bool assign(std::size_t cell, int v) {
    if (value_[cell] == v) return true;
    if (value_[cell] != kUnset) return false;
    value_[cell] = v;
    trail_.push_back(cell);
    queue_.push_back(cell);
    return true;
  }

  bool propagate() {
    std::size_t head = 0;
    std::vector<std::size_t> cells;
    Tuple vals;
    while (head < queue_.size()) {
      const auto x = queue_[head++];
      for (const auto& g : gens_) {
        const auto m = g.arity();
        cells.assign(m, 0);
        vals.assign(m, 0);
        const auto assigned = trail_.size();
        for (std::size_t pos = 0; pos < m; ++pos) {
          // Position `pos` holds x, the others range over assigned cells.
          std::vector<std::size_t> others(m - 1, 0);
          do {
            std::size_t o = 0;
            for (std::size_t j = 0; j < m; ++j) cells[j] = j == pos ? x : trail_[others[o++]];
            for (std::size_t j = 0; j < m; ++j) vals[j] = static_cast<Elem>(value_[cells[j]]);
            if (!assign(apply(g, cells), g(vals))) {
              queue_.clear();
              return false;
            }
          } while (m > 1 && advance(others, assigned));
        }
      }
    }
    queue_.clear();
    return true;
  }

  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      value_[trail_.back()] = kUnset;
      trail_.pop_back();
    }
  }

  void search(std::size_t pos) {
    while (pos < order_.size() && value_[order_[pos]] != kUnset) ++pos;
    if (pos == order_.size()) {
      if (found_.size() >= limit_) {
        throw Error(Errc::limit_exceeded, "centralizer slice exceeds " + std::to_string(limit_) +
                                              " operations");
      }
      std::vector<Elem> values(points_);
      for (std::size_t p = 0; p < points_; ++p) values[p] = static_cast<Elem>(value_[p]);
      found_.emplace_back(k_, A_, std::move(values));
      return;
    }
    const auto cell = order_[pos];
    for (std::size_t v = 0; v < A_; ++v) {
      const auto mark = trail_.size();
      if (assign(cell, static_cast<int>(v)) && propagate()) search(pos + 1);
      undo(mark);
    }
  }

  std::span<const OpTable> gens_;
  std::size_t k_;
  std::size_t limit_;
  std::size_t A_ = 0;
  std::size_t points_ = 0;
  std::vector<Elem> coords_;
  std::vector<int> value_;
  std::vector<std::size_t> order_;
  std::vector<std::size_t> trail_;
  std::vector<std::size_t> queue_;
  Tuple args_;
  std::vector<OpTable> found_;
};

}  // namespace

std::vector<OpTable> centralizer_slice(std::span<const OpTable> generators, std::size_t arity,
                                       std::size_t limit) {
  if (arity == 0) throw Error(Errc::bad_index, "centralizer slices need arity at least 1");
  if (generators.empty()) throw Error(Errc::bad_spec, "no generators given");
  for (const auto& g : generators) {
    require_same_carrier(g.carrier_size(), generators.front().carrier_size());
  }
  return CentralizerSearch(generators, arity, limit).run();
}

Relation closure_under(const Relation& rel, std::span<const OpTable> ops, std::size_t limit) {
  const auto A = rel.carrier_size();
  const auto h = rel.arity();
  for (const auto& f : ops) require_same_carrier(f.carrier_size(), A);

  std::vector<Elem> flat;
  std::vector<std::uint64_t> codes(rel.codes().begin(), rel.codes().end());
  std::unordered_set<std::uint64_t> seen(codes.begin(), codes.end());
  for (std::size_t i = 0; i < rel.size(); ++i) {
    const auto r = rel.row(i);
    flat.insert(flat.end(), r.begin(), r.end());
  }
  if (codes.size() > limit) throw Error(Errc::limit_exceeded, "relation exceeds closure limit");

  std::size_t start = 0;
  Tuple column;
  Tuple image(h);
  while (start < codes.size()) {
    const auto end = codes.size();
    for (const auto& f : ops) {
      const auto n = f.arity();
      std::vector<std::size_t> pick(n, 0);
      column.assign(n, 0);
      do {
        if (std::all_of(pick.begin(), pick.end(), [&](std::size_t p) { return p < start; })) {
          continue;
        }
        for (std::size_t pos = 0; pos < h; ++pos) {
          for (std::size_t i = 0; i < n; ++i) column[i] = flat[pick[i] * h + pos];
          image[pos] = f(column);
        }
        const auto code = encode_tuple(image, A);
        if (seen.insert(code).second) {
          if (codes.size() >= limit) {
            throw Error(Errc::limit_exceeded, "closure exceeds " + std::to_string(limit) +
                                                  " tuples");
          }
          codes.push_back(code);
          flat.insert(flat.end(), image.begin(), image.end());
        }
      } while (advance(pick, end));
    }
    start = end;
  }
  return Relation::from_codes(h, A, std::move(codes));
}

}  // namespace latclone
