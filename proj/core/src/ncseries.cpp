#include "lmzv/ncseries.hpp"

#include <algorithm>
#include <charconv>
#include <string>

#include "lmzv/arith.hpp"
#include "lmzv/error.hpp"

namespace lmzv {

// ---- Alphabet --------------------------------------------------------------

Alphabet::Alphabet(std::uint64_t p, std::uint64_t level) : p_(p), n_(level) {
  require_prime(p);
  modulus_ = checked_pow(p, level);
  if (modulus_ >= (std::uint64_t{1} << 31)) throw DomainError("alphabet too large");
}

Letter Alphabet::y(std::int64_t i) const {
  const auto m = static_cast<std::int64_t>(modulus_);
  auto r = i % m;
  if (r < 0) r += m;
  return Letter{static_cast<std::uint32_t>(r + 1)};
}

Letter Alphabet::letter(std::size_t code) const {
  if (code >= size()) throw DomainError("letter code out of range");
  return Letter{static_cast<std::uint32_t>(code)};
}

std::string Alphabet::name(Letter l) const {
  return l.is_x() ? std::string("X") : "Y" + std::to_string(l.y_index());
}

Letter Alphabet::parse_letter(std::string_view text) const {
  if (text == "X") return x();
  if (text.size() >= 2 && text.front() == 'Y') {
    std::uint64_t idx = 0;
    const auto* first = text.data() + 1;
    const auto* last = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(first, last, idx);
    if (ec == std::errc() && ptr == last && idx < modulus_) {
      return Letter{static_cast<std::uint32_t>(idx + 1)};
    }
  }
  throw ParseError("bad letter '" + std::string(text) + "' for p^n = " + std::to_string(modulus_));
}

// ---- Monomial --------------------------------------------------------------

std::size_t Monomial::y_degree() const {
  return static_cast<std::size_t>(
      std::count_if(letters_.begin(), letters_.end(), [](Letter l) { return l.is_y(); }));
}

std::string Monomial::to_string(const Alphabet& alphabet) const {
  std::string out;
  for (std::size_t i = 0; i < letters_.size(); ++i) {
    if (i) out += '.';
    out += alphabet.name(letters_[i]);
  }
  return out;
}

Monomial Monomial::parse(std::string_view text, const Alphabet& alphabet) {
  std::vector<Letter> letters;
  if (text.empty()) return Monomial();
  std::size_t start = 0;
  while (true) {
    const auto dot = text.find('.', start);
    letters.push_back(alphabet.parse_letter(text.substr(start, dot - start)));
    if (dot == std::string_view::npos) break;
    start = dot + 1;
  }
  return Monomial(std::move(letters));
}

// ---- NCSeries --------------------------------------------------------------

NCSeries::NCSeries(Alphabet alphabet, std::size_t degree)
    : alphabet_(alphabet), degree_(degree), layers_(degree + 1) {
  powers_.reserve(degree + 1);
  std::uint64_t pw = 1;
  for (std::size_t d = 0; d <= degree; ++d) {
    powers_.push_back(pw);
    if (d < degree) {
      try {
        pw = checked_pow(alphabet.size(), d + 1);
      } catch (const DomainError&) {
        throw DomainError("alphabet of size " + std::to_string(alphabet.size()) +
                          " cannot be packed up to degree " + std::to_string(degree));
      }
    }
  }
}

NCSeries NCSeries::one(const Alphabet& alphabet, std::size_t degree) {
  NCSeries s(alphabet, degree);
  s.add_packed(0, 0, Rational(1));
  return s;
}

NCSeries NCSeries::letter(const Alphabet& alphabet, std::size_t degree, Letter l) {
  return monomial(alphabet, degree, Monomial({l}));
}

NCSeries NCSeries::monomial(const Alphabet& alphabet, std::size_t degree, const Monomial& w,
                            const Rational& coeff) {
  NCSeries s(alphabet, degree);
  s.add_term(w, coeff);
  return s;
}

std::uint64_t NCSeries::word_code(const Monomial& w) const {
  std::uint64_t code = 0;
  for (Letter l : w.letters()) {
    if (l.code >= alphabet_.size()) throw DomainError("letter outside the alphabet");
    code = code * alphabet_.size() + l.code;
  }
  return code;
}

Monomial NCSeries::decode(std::size_t d, std::uint64_t code) const {
  std::vector<Letter> letters(d);
  for (std::size_t k = d; k-- > 0;) {
    letters[k] = Letter{static_cast<std::uint32_t>(code % alphabet_.size())};
    code /= alphabet_.size();
  }
  return Monomial(std::move(letters));
}

void NCSeries::add_packed(std::size_t d, std::uint64_t code, const Rational& c) {
  if (c.is_zero()) return;
  auto& layer = layers_[d];
  auto [it, inserted] = layer.try_emplace(code, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) layer.erase(it);
  }
}

void NCSeries::add_term(const Monomial& w, const Rational& c) {
  const auto code = word_code(w);
  if (w.degree() > degree_) return;
  add_packed(w.degree(), code, c);
}

Rational NCSeries::coeff(const Monomial& w) const {
  if (w.degree() > degree_) {
    throw DomainError("coefficient of a degree-" + std::to_string(w.degree()) +
                      " word requested from a series truncated at " + std::to_string(degree_));
  }
  const auto& layer = layers_[w.degree()];
  const auto it = layer.find(word_code(w));
  return it == layer.end() ? Rational(0) : it->second;
}

Rational NCSeries::constant_term() const {
  const auto it = layers_[0].find(0);
  return it == layers_[0].end() ? Rational(0) : it->second;
}

bool NCSeries::is_zero() const {
  return std::all_of(layers_.begin(), layers_.end(), [](const Layer& l) { return l.empty(); });
}

std::size_t NCSeries::term_count() const {
  std::size_t n = 0;
  for (const auto& l : layers_) n += l.size();
  return n;
}

std::vector<Term> NCSeries::terms() const {
  std::vector<Term> out;
  out.reserve(term_count());
  for (std::size_t d = 0; d <= degree_; ++d) {
    for (const auto& [code, c] : layers_[d]) out.push_back({decode(d, code), c});
  }
  return out;
}

NCSeries NCSeries::with_degree(std::size_t degree) const {
  NCSeries out(alphabet_, degree);
  for (std::size_t d = 0; d <= std::min(degree, degree_); ++d) out.layers_[d] = layers_[d];
  return out;
}

void NCSeries::require_compatible(const NCSeries& o) const {
  if (!(alphabet_ == o.alphabet_)) throw DomainError("series over different alphabets");
  if (degree_ != o.degree_) {
    throw DomainError("series with truncation degrees " + std::to_string(degree_) + " and " +
                      std::to_string(o.degree_));
  }
}

NCSeries& NCSeries::operator+=(const NCSeries& o) {
  require_compatible(o);
  for (std::size_t d = 0; d <= degree_; ++d) {
    for (const auto& [code, c] : o.layers_[d]) add_packed(d, code, c);
  }
  return *this;
}

NCSeries& NCSeries::operator-=(const NCSeries& o) {
  require_compatible(o);
  for (std::size_t d = 0; d <= degree_; ++d) {
    for (const auto& [code, c] : o.layers_[d]) add_packed(d, code, -c);
  }
  return *this;
}

NCSeries& NCSeries::operator*=(const Rational& c) {
  if (c.is_zero()) {
    for (auto& l : layers_) l.clear();
    return *this;
  }
  for (auto& l : layers_) {
    for (auto& [code, v] : l) v *= c;
  }
  return *this;
}

NCSeries NCSeries::operator-() const { return *this * Rational(-1); }

NCSeries operator*(const NCSeries& a, const NCSeries& b) {
  a.require_compatible(b);
  NCSeries out(a.alphabet_, a.degree_);
  const std::size_t D = a.degree_;
  for (std::size_t da = 0; da <= D; ++da) {
    if (a.layers_[da].empty()) continue;
    for (std::size_t db = 0; da + db <= D; ++db) {
      if (b.layers_[db].empty()) continue;
      auto& target = out.layers_[da + db];
      const std::uint64_t shift = a.powers_[db];
      for (const auto& [ca, va] : a.layers_[da]) {
        const std::uint64_t head = ca * shift;
        // Codes head + cb increase with cb, so each insert lands after the last.
        auto hint = target.lower_bound(head);
        for (const auto& [cb, vb] : b.layers_[db]) {
          auto it = target.try_emplace(hint, head + cb);
          it->second.add_product(va, vb);
          hint = std::next(it);
        }
      }
    }
  }
  for (auto& layer : out.layers_) std::erase_if(layer, [](const auto& kv) { return kv.second.is_zero(); });
  return out;
}

bool operator==(const NCSeries& a, const NCSeries& b) {
  return a.alphabet_ == b.alphabet_ && a.degree_ == b.degree_ && a.layers_ == b.layers_;
}

// ---- exp / log / inverse ----------------------------------------------------

NCSeries exp(const NCSeries& s) {
  if (!s.constant_term().is_zero()) throw DomainError("exp needs a series with zero constant term");
  NCSeries result = NCSeries::one(s.alphabet(), s.degree());
  NCSeries power = result;
  for (std::size_t k = 1; k <= s.degree(); ++k) {
    power = power * s;
    power *= Rational(Integer(1), Integer(static_cast<unsigned long>(k)));
    if (power.is_zero()) break;
    result += power;
  }
  return result;
}

NCSeries log(const NCSeries& g) {
  if (g.constant_term() != Rational(1)) throw DomainError("log needs a series with constant term 1");
  const NCSeries u = g - NCSeries::one(g.alphabet(), g.degree());
  NCSeries result(g.alphabet(), g.degree());
  NCSeries power = u;
  for (std::size_t k = 1; k <= g.degree() && !power.is_zero(); ++k) {
    const Rational c(Integer(k % 2 == 1 ? 1 : -1), Integer(static_cast<unsigned long>(k)));
    result += power * c;
    power = power * u;
  }
  return result;
}

NCSeries inverse(const NCSeries& g) {
  const Rational c = g.constant_term();
  if (c.is_zero()) throw DomainError("series with zero constant term is not invertible");
  const Rational c_inv = Rational(1) / c;
  // g = c (1 + u)  =>  g^-1 = c^-1 sum (-u)^k
  const NCSeries one = NCSeries::one(g.alphabet(), g.degree());
  const NCSeries minus_u = one - g * c_inv;
  NCSeries result = one;
  NCSeries power = one;
  for (std::size_t k = 1; k <= g.degree(); ++k) {
    power = power * minus_u;
    if (power.is_zero()) break;
    result += power;
  }
  return result * c_inv;
}

NCSeries depth_truncate(const NCSeries& s, std::size_t r) {
  if (r > s.degree()) throw DomainError("depth_truncate: r exceeds the truncation degree");
  NCSeries out(s.alphabet(), s.degree());
  for (std::size_t d = 0; d <= r; ++d) {
    for (const auto& [code, c] : s.layer(d)) out.add_packed(d, code, c);
  }
  return out;
}

NCSeries y_pure_part(const NCSeries& s, std::size_t r) {
  if (r > s.degree()) throw DomainError("y_pure_part: r exceeds the truncation degree");
  NCSeries out(s.alphabet(), s.degree());
  const std::uint64_t base = s.alphabet().size();
  for (std::size_t d = 0; d <= r; ++d) {
    for (const auto& [code, c] : s.layer(d)) {
      bool pure = true;
      for (std::uint64_t rest = code, k = 0; k < d; ++k, rest /= base) {
        if (rest % base == 0) {
          pure = false;
          break;
        }
      }
      if (pure) out.add_packed(d, code, c);
    }
  }
  return out;
}

// ---- Substitution -----------------------------------------------------------

Substitution::Substitution(Alphabet alphabet, std::size_t degree)
    : alphabet_(alphabet), degree_(degree), images_(alphabet.size()) {}

Substitution Substitution::identity(const Alphabet& alphabet, std::size_t degree) {
  Substitution s(alphabet, degree);
  for (std::size_t c = 0; c < alphabet.size(); ++c) {
    s.set(alphabet.letter(c), NCSeries::letter(alphabet, degree, alphabet.letter(c)));
  }
  return s;
}

void Substitution::set(Letter l, NCSeries image) {
  if (l.code >= images_.size()) throw DomainError("letter outside the alphabet");
  if (!(image.alphabet() == alphabet_) || image.degree() != degree_) {
    throw DomainError("substitution image has the wrong alphabet or degree");
  }
  images_[l.code] = std::move(image);
}

void Substitution::clear(Letter l) {
  if (l.code >= images_.size()) throw DomainError("letter outside the alphabet");
  images_[l.code].reset();
}

const NCSeries* Substitution::image(Letter l) const {
  if (l.code >= images_.size() || !images_[l.code]) return nullptr;
  return &*images_[l.code];
}

NCSeries Substitution::apply(const NCSeries& s) const {
  if (!(s.alphabet() == alphabet_) || s.degree() != degree_) {
    throw DomainError("substitution applied to a series with a different alphabet or degree");
  }
  const std::uint64_t base = alphabet_.size();
  // Products of images for every prefix of every word, built shortest first.
  std::vector<std::map<std::uint64_t, NCSeries>> prefix(degree_ + 1);
  prefix[0].emplace(0, NCSeries::one(alphabet_, degree_));
  for (std::size_t d = 1; d <= degree_; ++d) {
    for (std::size_t full = d; full <= degree_; ++full) {
      for (const auto& [code, c] : s.layer(full)) {
        const std::uint64_t head = code / s.base_power(full - d);
        if (prefix[d].contains(head)) continue;
        const auto letter = static_cast<std::uint32_t>(head % base);
        const NCSeries* img = image(Letter{letter});
        if (img == nullptr) {
          throw DomainError("substitution has no image for letter " + alphabet_.name(Letter{letter}));
        }
        prefix[d].emplace(head, prefix[d - 1].at(head / base) * *img);
      }
    }
  }
  NCSeries out(alphabet_, degree_);
  for (std::size_t d = 0; d <= degree_; ++d) {
    for (const auto& [code, c] : s.layer(d)) out += prefix[d].at(code) * c;
  }
  return out;
}

Substitution compose(const Substitution& outer, const Substitution& inner) {
  Substitution out(inner.alphabet_, inner.degree_);
  for (std::size_t c = 0; c < inner.images_.size(); ++c) {
    if (inner.images_[c]) out.images_[c] = outer.apply(*inner.images_[c]);
  }
  return out;
}

NCSeries substitute(const NCSeries& s, const Substitution& images) { return images.apply(s); }

// ---- Lambda tables ----------------------------------------------------------

LambdaTable::LambdaTable(ResidueGrid grid) : grid_(grid), values_(grid.size()) {}

LambdaTable::LambdaTable(ResidueGrid grid, std::vector<Rational> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    throw DomainError("lambda table needs " + std::to_string(grid_.size()) + " values");
  }
}

bool LambdaTable::is_zero() const {
  return std::all_of(values_.begin(), values_.end(), [](const Rational& v) { return v.is_zero(); });
}

Alphabet alphabet_of(const ResidueGrid& grid) { return Alphabet(grid.prime(), grid.level()); }

Monomial y_word(const Alphabet& alphabet, const Cell& cell) {
  std::vector<Letter> letters;
  letters.reserve(cell.size());
  for (auto c : cell) letters.push_back(alphabet.y(static_cast<std::int64_t>(c)));
  return Monomial(std::move(letters));
}

NCSeries from_lambda_table(const LambdaTable& t, std::optional<std::size_t> degree) {
  const std::size_t r = t.grid().depth();
  const std::size_t D = degree.value_or(r);
  if (D < r) throw DomainError("truncation degree below the table depth");
  const Alphabet alphabet = alphabet_of(t.grid());
  NCSeries s = NCSeries::one(alphabet, D);
  for (std::size_t i = 0; i < t.grid().size(); ++i) {
    if (!t[i].is_zero()) s.add_term(y_word(alphabet, t.grid().cell(i)), t[i]);
  }
  return s;
}

LambdaTable to_lambda_table(const NCSeries& s, std::size_t r) {
  if (r == 0 || r > s.degree()) throw DomainError("to_lambda_table: need 1 <= r <= D");
  const Alphabet& alphabet = s.alphabet();
  LambdaTable t(ResidueGrid(alphabet.prime(), alphabet.level(), r));
  for (std::size_t i = 0; i < t.grid().size(); ++i) {
    t[i] = s.coeff(y_word(alphabet, t.grid().cell(i)));
  }
  return t;
}

}  // namespace lmzv
