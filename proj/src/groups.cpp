#include "folnerlab/groups.hpp"

#include <algorithm>
#include <cctype>
#include <optional>

#include "folnerlab/rational.hpp"

namespace folnerlab {

namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_add_overflow(a, b, &out)) throw OverflowError("coordinate overflow in group operation");
  return out;
}

std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_sub_overflow(a, b, &out)) throw OverflowError("coordinate overflow in group operation");
  return out;
}

std::int64_t checked_neg(std::int64_t a) { return checked_sub(0, a); }

std::int64_t mod_reduce(std::int64_t v, std::int64_t m) {
  std::int64_t r = v % m;
  return r < 0 ? r + m : r;
}

bool is_wreath_kind(GroupKind k) { return k == GroupKind::Lamplighter || k == GroupKind::WreathZZ; }

}  // namespace

GroupDescriptor::GroupDescriptor(GroupKind kind, std::vector<std::int64_t> moduli, int free_rank)
    : kind_(kind), moduli_(std::move(moduli)), free_rank_(free_rank) {}

GroupDescriptor GroupDescriptor::free_abelian(int d) {
  if (d < 1) throw Error("free abelian rank must be at least 1");
  return GroupDescriptor(GroupKind::FreeAbelian, {}, d);
}

GroupDescriptor GroupDescriptor::finite_by_free(std::vector<std::int64_t> moduli, int d) {
  if (moduli.empty()) return free_abelian(d);
  if (d < 0) throw Error("free rank must be nonnegative");
  for (std::int64_t m : moduli)
    if (m < 2) throw Error("torsion moduli must be at least 2");
  return GroupDescriptor(GroupKind::FiniteByFree, std::move(moduli), d);
}

GroupDescriptor GroupDescriptor::lamplighter() {
  return GroupDescriptor(GroupKind::Lamplighter, {}, 0);
}

GroupDescriptor GroupDescriptor::wreath_zz() {
  return GroupDescriptor(GroupKind::WreathZZ, {}, 0);
}

std::optional<int> GroupDescriptor::declared_rank() const {
  switch (kind_) {
    case GroupKind::FreeAbelian:
    case GroupKind::FiniteByFree:
      return free_rank_;
    case GroupKind::Lamplighter:
      return 1;
    case GroupKind::WreathZZ:
      return std::nullopt;
  }
  return std::nullopt;
}

bool GroupElement::operator<(const GroupElement& other) const {
  if (shift != other.shift) return shift < other.shift;
  if (coords != other.coords) return coords < other.coords;
  return config < other.config;
}

GroupElement identity(const GroupDescriptor& desc) {
  GroupElement e;
  if (desc.is_abelian()) e.coords.assign(desc.coord_count(), 0);
  return e;
}

bool is_canonical(const GroupDescriptor& desc, const GroupElement& g) {
  if (desc.is_abelian()) {
    if (g.shift != 0 || !g.config.empty()) return false;
    if (g.coords.size() != desc.coord_count()) return false;
    for (std::size_t i = 0; i < desc.moduli().size(); ++i)
      if (g.coords[i] < 0 || g.coords[i] >= desc.moduli()[i]) return false;
    return true;
  }
  if (!g.coords.empty()) return false;
  for (std::size_t i = 0; i < g.config.size(); ++i) {
    if (i > 0 && g.config[i - 1].first >= g.config[i].first) return false;
    if (g.config[i].second == 0) return false;
    if (desc.kind() == GroupKind::Lamplighter && g.config[i].second != 1) return false;
  }
  return true;
}

void validate_element(const GroupDescriptor& desc, const GroupElement& g) {
  if (!is_canonical(desc, g))
    throw DescriptorMismatchError("element does not belong to this group descriptor");
}

GroupElement make_abelian(const GroupDescriptor& desc, std::vector<std::int64_t> coords) {
  if (!desc.is_abelian()) throw DescriptorMismatchError("abelian element for non-abelian descriptor");
  if (coords.size() != desc.coord_count())
    throw DescriptorMismatchError("coordinate count does not match descriptor");
  for (std::size_t i = 0; i < desc.moduli().size(); ++i) coords[i] = mod_reduce(coords[i], desc.moduli()[i]);
  GroupElement g;
  g.coords = std::move(coords);
  return g;
}

GroupElement make_wreath(const GroupDescriptor& desc, std::int64_t shift,
                         std::vector<std::pair<std::int64_t, std::int64_t>> config) {
  if (!is_wreath_kind(desc.kind()))
    throw DescriptorMismatchError("wreath element for non-wreath descriptor");
  std::sort(config.begin(), config.end());
  std::vector<std::pair<std::int64_t, std::int64_t>> merged;
  for (const auto& [pos, val] : config) {
    if (!merged.empty() && merged.back().first == pos)
      merged.back().second = checked_add(merged.back().second, val);
    else
      merged.emplace_back(pos, val);
  }
  std::vector<std::pair<std::int64_t, std::int64_t>> out;
  for (auto& [pos, val] : merged) {
    if (desc.kind() == GroupKind::Lamplighter) val = mod_reduce(val, 2);
    if (val != 0) out.emplace_back(pos, val);
  }
  GroupElement g;
  g.shift = shift;
  g.config = std::move(out);
  return g;
}

GroupElement multiply(const GroupDescriptor& desc, const GroupElement& g, const GroupElement& h) {
  validate_element(desc, g);
  validate_element(desc, h);
  if (desc.is_abelian()) {
    GroupElement out;
    out.coords.resize(g.coords.size());
    const auto& moduli = desc.moduli();
    for (std::size_t i = 0; i < g.coords.size(); ++i) {
      std::int64_t s = checked_add(g.coords[i], h.coords[i]);
      out.coords[i] = i < moduli.size() ? mod_reduce(s, moduli[i]) : s;
    }
    return out;
  }
  // (n,u)(m,v) = (n+m, u^m + v) where (u^m)_i = u_{i+m}, so supp shifts by -m.
  std::vector<std::pair<std::int64_t, std::int64_t>> merged;
  merged.reserve(g.config.size() + h.config.size());
  for (const auto& [pos, val] : g.config) merged.emplace_back(checked_sub(pos, h.shift), val);
  for (const auto& [pos, val] : h.config) merged.emplace_back(pos, val);
  return make_wreath(desc, checked_add(g.shift, h.shift), std::move(merged));
}

GroupElement inverse(const GroupDescriptor& desc, const GroupElement& g) {
  validate_element(desc, g);
  if (desc.is_abelian()) {
    GroupElement out;
    out.coords.resize(g.coords.size());
    const auto& moduli = desc.moduli();
    for (std::size_t i = 0; i < g.coords.size(); ++i)
      out.coords[i] = i < moduli.size() ? mod_reduce(-g.coords[i], moduli[i]) : checked_neg(g.coords[i]);
    return out;
  }
  // (n,u)^{-1} = (-n, -(u^{-n})); supports shift by +n.
  std::vector<std::pair<std::int64_t, std::int64_t>> conf;
  conf.reserve(g.config.size());
  for (const auto& [pos, val] : g.config)
    conf.emplace_back(checked_add(pos, g.shift),
                      desc.kind() == GroupKind::Lamplighter ? val : checked_neg(val));
  return make_wreath(desc, checked_neg(g.shift), std::move(conf));
}

GroupElement power(const GroupDescriptor& desc, const GroupElement& g, std::int64_t exponent) {
  validate_element(desc, g);
  GroupElement base = g;
  if (exponent < 0) {
    base = inverse(desc, g);
    if (exponent == INT64_MIN) throw OverflowError("exponent out of range");
    exponent = -exponent;
  }
  GroupElement acc = identity(desc);
  while (exponent > 0) {
    if (exponent & 1) acc = multiply(desc, acc, base);
    exponent >>= 1;
    if (exponent > 0) base = multiply(desc, base, base);
  }
  return acc;
}

void encode_element(const GroupElement& g, std::string& out) {
  auto put64 = [&out](std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
  };
  put64(static_cast<std::uint64_t>(g.shift));
  put64(g.coords.size());
  for (std::int64_t c : g.coords) put64(static_cast<std::uint64_t>(c));
  put64(g.config.size());
  for (const auto& [pos, val] : g.config) {
    put64(static_cast<std::uint64_t>(pos));
    put64(static_cast<std::uint64_t>(val));
  }
}

std::uint64_t hash_element(const GroupElement& g) {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix64 = [&h](std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      h ^= (v >> (8 * i)) & 0xFF;
      h *= 1099511628211ULL;
    }
  };
  mix64(static_cast<std::uint64_t>(g.shift));
  mix64(g.coords.size());
  for (std::int64_t c : g.coords) mix64(static_cast<std::uint64_t>(c));
  for (const auto& [pos, val] : g.config) {
    mix64(static_cast<std::uint64_t>(pos));
    mix64(static_cast<std::uint64_t>(val));
  }
  return h;
}

namespace {

/// Exact solve of M x = b (rows x cols, full column rank expected).
/// Returns nullopt when inconsistent; throws when the columns are dependent.
std::optional<std::vector<Rational>> solve_exact(std::vector<std::vector<Rational>> m,
                                                 std::vector<Rational> b) {
  const std::size_t rows = m.size();
  const std::size_t cols = rows == 0 ? 0 : m[0].size();
  std::vector<std::size_t> pivot_row(cols, SIZE_MAX);
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols; ++c) {
    std::size_t p = SIZE_MAX;
    for (std::size_t r = rank; r < rows; ++r)
      if (m[r][c] != Rational(0, 1)) {
        p = r;
        break;
      }
    if (p == SIZE_MAX) continue;
    std::swap(m[p], m[rank]);
    std::swap(b[p], b[rank]);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank || m[r][c] == Rational(0, 1)) continue;
      Rational f = m[r][c] / m[rank][c];
      for (std::size_t cc = c; cc < cols; ++cc) m[r][cc] -= f * m[rank][cc];
      b[r] -= f * b[rank];
    }
    pivot_row[c] = rank;
    ++rank;
  }
  if (rank < cols) throw Error("membership solve requires independent embedding images");
  for (std::size_t r = rank; r < rows; ++r)
    if (b[r] != Rational(0, 1)) return std::nullopt;
  std::vector<Rational> x(cols, Rational(0, 1));
  for (std::size_t c = 0; c < cols; ++c) x[c] = b[pivot_row[c]] / m[pivot_row[c]][c];
  return x;
}

std::optional<std::vector<std::int64_t>> integral_solution(
    const std::optional<std::vector<Rational>>& x) {
  if (!x) return std::nullopt;
  std::vector<std::int64_t> out;
  out.reserve(x->size());
  for (const Rational& q : *x) {
    if (q.denominator() != 1) return std::nullopt;
    if (q.numerator() > INT64_MAX || q.numerator() < INT64_MIN)
      throw OverflowError("membership coordinates out of range");
    out.push_back(q.numerator().convert_to<std::int64_t>());
  }
  return out;
}

}  // namespace

ZdEmbedding::ZdEmbedding(GroupDescriptor desc, std::vector<GroupElement> images)
    : desc_(std::move(desc)), images_(std::move(images)) {
  if (images_.empty()) throw EmbeddingError("an embedding needs at least one image");
  for (const GroupElement& g : images_) validate_element(desc_, g);
  const int d = static_cast<int>(images_.size());
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j)
      if (multiply(desc_, images_[i], images_[j]) != multiply(desc_, images_[j], images_[i]))
        throw EmbeddingError("embedding images must commute pairwise");
  // No nontrivial combination with coefficients in [-3,3]^d may hit the
  // identity; powers are precomputed and combined with an odometer.
  std::vector<std::vector<GroupElement>> pow_table(d);
  for (int i = 0; i < d; ++i) {
    pow_table[i].reserve(7);
    for (int c = -3; c <= 3; ++c) pow_table[i].push_back(power(desc_, images_[i], c));
  }
  const GroupElement id = identity(desc_);
  std::vector<int> coeff(d, -3);
  while (true) {
    bool all_zero = true;
    for (int c : coeff)
      if (c != 0) {
        all_zero = false;
        break;
      }
    if (!all_zero) {
      GroupElement acc = pow_table[0][coeff[0] + 3];
      for (int i = 1; i < d; ++i) acc = multiply(desc_, acc, pow_table[i][coeff[i] + 3]);
      if (acc == id) throw EmbeddingError("embedding images are dependent within the checked box");
    }
    int i = 0;
    while (i < d && coeff[i] == 3) coeff[i++] = -3;
    if (i == d) break;
    ++coeff[i];
  }
}

bool ZdEmbedding::contains(const GroupElement& g) const {
  validate_element(desc_, g);
  const int d = dimension();
  std::optional<std::vector<std::int64_t>> coeffs;
  if (desc_.is_abelian()) {
    const std::size_t t = desc_.moduli().size();
    const std::size_t free = static_cast<std::size_t>(desc_.free_rank());
    std::vector<std::vector<Rational>> m(free, std::vector<Rational>(d, Rational(0, 1)));
    std::vector<Rational> b(free, Rational(0, 1));
    for (std::size_t r = 0; r < free; ++r) {
      for (int c = 0; c < d; ++c) m[r][c] = Rational(images_[c].coords[t + r], 1);
      b[r] = Rational(g.coords[t + r], 1);
    }
    coeffs = integral_solution(solve_exact(std::move(m), std::move(b)));
  } else if (d == 1 && images_[0].shift != 0) {
    if (g.shift % images_[0].shift != 0) return false;
    coeffs = std::vector<std::int64_t>{g.shift / images_[0].shift};
  } else {
    for (const GroupElement& img : images_)
      if (img.shift != 0)
        throw Error("membership test unsupported for this embedding shape");
    if (g.shift != 0) return false;
    std::vector<std::int64_t> positions;
    for (const GroupElement& img : images_)
      for (const auto& [pos, val] : img.config) positions.push_back(pos);
    for (const auto& [pos, val] : g.config) positions.push_back(pos);
    std::sort(positions.begin(), positions.end());
    positions.erase(std::unique(positions.begin(), positions.end()), positions.end());
    std::vector<std::vector<Rational>> m(positions.size(), std::vector<Rational>(d, Rational(0, 1)));
    std::vector<Rational> b(positions.size(), Rational(0, 1));
    auto row_of = [&positions](std::int64_t pos) {
      return static_cast<std::size_t>(
          std::lower_bound(positions.begin(), positions.end(), pos) - positions.begin());
    };
    for (int c = 0; c < d; ++c)
      for (const auto& [pos, val] : images_[c].config) m[row_of(pos)][c] = Rational(val, 1);
    for (const auto& [pos, val] : g.config) b[row_of(pos)] = Rational(val, 1);
    coeffs = integral_solution(solve_exact(std::move(m), std::move(b)));
  }
  if (!coeffs) return false;
  GroupElement acc = identity(desc_);
  for (int i = 0; i < d; ++i) acc = multiply(desc_, acc, power(desc_, images_[i], (*coeffs)[i]));
  return acc == g;
}

ZdEmbedding standard_embedding(const GroupDescriptor& desc, int d) {
  if (d < 1) throw RankExceededError("embedding dimension must be at least 1");
  if (auto rank = desc.declared_rank(); rank && d > *rank)
    throw RankExceededError("embedding dimension exceeds declared rank");
  std::vector<GroupElement> images;
  images.reserve(d);
  switch (desc.kind()) {
    case GroupKind::FreeAbelian:
    case GroupKind::FiniteByFree: {
      const std::size_t t = desc.moduli().size();
      for (int i = 0; i < d; ++i) {
        std::vector<std::int64_t> coords(desc.coord_count(), 0);
        coords[t + static_cast<std::size_t>(i)] = 1;
        images.push_back(make_abelian(desc, std::move(coords)));
      }
      break;
    }
    case GroupKind::Lamplighter:
      images.push_back(make_wreath(desc, 1, {}));
      break;
    case GroupKind::WreathZZ:
      for (int i = 0; i < d; ++i) images.push_back(make_wreath(desc, 0, {{i, 1}}));
      break;
  }
  return ZdEmbedding(desc, std::move(images));
}

namespace {

std::string to_lower(const std::string& s) {
  std::string out = s;
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::int64_t parse_number(const std::string& text, std::size_t begin, std::size_t end) {
  if (begin == end) throw ParseError("expected a number", begin);
  if (end - begin > 18) throw ParseError("number too large", begin);
  std::int64_t v = 0;
  for (std::size_t i = begin; i < end; ++i) {
    char c = text[i];
    if (c < '0' || c > '9') throw ParseError("expected a digit", i);
    v = v * 10 + (c - '0');
  }
  return v;
}

}  // namespace

GroupDescriptor parse_descriptor(const std::string& text) {
  if (text.empty()) throw ParseError("empty group expression", 0);
  const std::string low = to_lower(text);
  if (low == "lamplighter") return GroupDescriptor::lamplighter();
  if (low == "wreath-zz") return GroupDescriptor::wreath_zz();

  std::vector<std::int64_t> moduli;
  int free_rank = 0;
  bool saw_free = false;
  std::size_t pos = 0;
  while (pos <= low.size()) {
    std::size_t sep = low.find('x', pos);
    if (sep == std::string::npos) sep = low.size();
    if (sep == pos) throw ParseError("empty token in group expression", pos);
    if (saw_free) throw ParseError("free part must be the last token", pos);
    if (low[pos] != 'z') throw ParseError("expected 'Z'", pos);
    if (pos + 1 >= sep) throw ParseError("expected '^' or '/' after 'Z'", pos + 1);
    if (low[pos + 1] == '^') {
      std::int64_t d = parse_number(low, pos + 2, sep);
      if (d < 1) throw ParseError("free rank must be at least 1", pos + 2);
      if (d > 64) throw ParseError("free rank too large", pos + 2);
      free_rank = static_cast<int>(d);
      saw_free = true;
    } else if (low[pos + 1] == '/') {
      std::int64_t m = parse_number(low, pos + 2, sep);
      if (m < 2) throw ParseError("modulus must be at least 2", pos + 2);
      moduli.push_back(m);
    } else {
      throw ParseError("expected '^' or '/' after 'Z'", pos + 1);
    }
    if (sep == low.size()) break;
    pos = sep + 1;
    if (pos == low.size()) throw ParseError("trailing separator", sep);
  }
  if (moduli.empty() && !saw_free) throw ParseError("group expression names no factors", 0);
  if (moduli.empty()) return GroupDescriptor::free_abelian(free_rank);
  return GroupDescriptor::finite_by_free(std::move(moduli), free_rank);
}

std::string render_descriptor(const GroupDescriptor& desc) {
  switch (desc.kind()) {
    case GroupKind::Lamplighter:
      return "lamplighter";
    case GroupKind::WreathZZ:
      return "wreath-zz";
    case GroupKind::FreeAbelian:
      return "Z^" + std::to_string(desc.free_rank());
    case GroupKind::FiniteByFree: {
      std::string out;
      for (std::size_t i = 0; i < desc.moduli().size(); ++i) {
        if (i > 0) out += "x";
        out += "Z/" + std::to_string(desc.moduli()[i]);
      }
      if (desc.free_rank() > 0) out += "xZ^" + std::to_string(desc.free_rank());
      return out;
    }
  }
  throw Error("unreachable descriptor kind");
}

namespace {

std::int64_t parse_signed(const std::string& text, std::size_t& pos) {
  std::size_t start = pos;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
    negative = text[pos] == '-';
    ++pos;
  }
  std::size_t digits_begin = pos;
  while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos;
  std::int64_t v = parse_number(text, digits_begin, pos);
  (void)start;
  return negative ? -v : v;
}

void expect_char(const std::string& text, std::size_t& pos, char c) {
  if (pos >= text.size() || text[pos] != c)
    throw ParseError(std::string("expected '") + c + "'", pos);
  ++pos;
}

}  // namespace

GroupElement parse_element(const GroupDescriptor& desc, const std::string& line) {
  std::size_t pos = 0;
  if (desc.is_abelian()) {
    std::vector<std::int64_t> coords;
    coords.push_back(parse_signed(line, pos));
    while (pos < line.size()) {
      expect_char(line, pos, ',');
      coords.push_back(parse_signed(line, pos));
    }
    if (coords.size() != desc.coord_count())
      throw ParseError("coordinate count does not match group", pos);
    return make_abelian(desc, std::move(coords));
  }
  std::int64_t shift = parse_signed(line, pos);
  expect_char(line, pos, ';');
  std::vector<std::pair<std::int64_t, std::int64_t>> config;
  if (pos < line.size()) {
    while (true) {
      std::int64_t p = parse_signed(line, pos);
      std::int64_t v = 1;
      if (desc.kind() == GroupKind::WreathZZ) {
        expect_char(line, pos, ':');
        v = parse_signed(line, pos);
      }
      config.emplace_back(p, v);
      if (pos == line.size()) break;
      expect_char(line, pos, ',');
    }
  }
  return make_wreath(desc, shift, std::move(config));
}

std::string format_element(const GroupDescriptor& desc, const GroupElement& g) {
  validate_element(desc, g);
  std::string out;
  if (desc.is_abelian()) {
    for (std::size_t i = 0; i < g.coords.size(); ++i) {
      if (i > 0) out += ",";
      out += std::to_string(g.coords[i]);
    }
    return out;
  }
  out += std::to_string(g.shift);
  out += ";";
  for (std::size_t i = 0; i < g.config.size(); ++i) {
    if (i > 0) out += ",";
    out += std::to_string(g.config[i].first);
    if (desc.kind() == GroupKind::WreathZZ) out += ":" + std::to_string(g.config[i].second);
  }
  return out;
}

}  // namespace folnerlab
