#include "lmzv/paths.hpp"

#include <charconv>
#include <set>

#include "lmzv/error.hpp"

namespace lmzv {

namespace {

const std::set<std::string_view, std::less<>>& base_paths() {
  static const std::set<std::string_view, std::less<>> names = {
      "pi", "q", "c", "d", "s", "t", "e", "eta",
      "alpha1", "alpha2", "alpha3", "alpha4", "alpha5", "alpha6"};
  return names;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

bool valid_name(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
    if (!ok) return false;
  }
  return true;
}

}  // namespace

// ---- PathWord ---------------------------------------------------------------

void PathWord::push(PathLetter l) {
  if (!letters_.empty() && letters_.back().generator == l.generator &&
      letters_.back().exponent == -l.exponent) {
    letters_.pop_back();
  } else {
    letters_.push_back(std::move(l));
  }
}

PathWord PathWord::generator(std::string name, int exponent) {
  if (!valid_name(name)) throw DomainError("bad generator name '" + name + "'");
  if (exponent != 1 && exponent != -1) throw DomainError("generator exponent must be +1 or -1");
  PathWord w;
  w.letters_.push_back({std::move(name), exponent});
  return w;
}

PathWord PathWord::parse(std::string_view text) {
  text = trim(text);
  PathWord w;
  if (text == "1") return w;
  std::size_t start = 0;
  while (true) {
    const auto star = text.find('*', start);
    std::string_view tok = trim(text.substr(start, star - start));
    int exponent = 1;
    if (const auto caret = tok.find('^'); caret != std::string_view::npos) {
      const auto exp_text = tok.substr(caret + 1);
      if (exp_text == "-1") {
        exponent = -1;
      } else if (exp_text != "1") {
        throw ParseError("bad exponent in path token '" + std::string(tok) + "'");
      }
      tok = tok.substr(0, caret);
    }
    if (!valid_name(tok)) throw ParseError("bad path token '" + std::string(tok) + "'");
    w.push({std::string(tok), exponent});
    if (star == std::string_view::npos) break;
    start = star + 1;
  }
  return w;
}

PathWord PathWord::inverse() const {
  PathWord w;
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) {
    w.letters_.push_back({it->generator, -it->exponent});
  }
  return w;
}

PathWord operator*(const PathWord& a, const PathWord& b) {
  PathWord w = a;
  for (const auto& l : b.letters_) w.push(l);
  return w;
}

std::string PathWord::to_string() const {
  if (letters_.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < letters_.size(); ++i) {
    if (i) out += '*';
    out += letters_[i].generator;
    if (letters_[i].exponent == -1) out += "^-1";
  }
  return out;
}

bool is_known_generator(std::string_view name, const Alphabet& alphabet) {
  if (name == "x" || base_paths().contains(name)) return true;
  // Canonical decimal index only, so "y01" is not an alias of "y1".
  if (name.size() >= 2 && name.front() == 'y' && (name.size() == 2 || name[1] != '0')) {
    std::uint64_t k = 0;
    const auto [ptr, ec] = std::from_chars(name.data() + 1, name.data() + name.size(), k);
    return ec == std::errc() && ptr == name.data() + name.size() && k < alphabet.modulus();
  }
  return false;
}

NCSeries evaluate(const PathWord& w, const std::map<std::string, NCSeries>& images,
                  const Alphabet& alphabet, std::size_t degree) {
  NCSeries out = NCSeries::one(alphabet, degree);
  std::map<std::string, NCSeries> inverses;
  for (const auto& l : w.letters()) {
    const auto it = images.find(l.generator);
    if (it == images.end()) throw DomainError("no image for generator '" + l.generator + "'");
    if (l.exponent == 1) {
      out = out * it->second;
    } else {
      auto inv = inverses.find(l.generator);
      if (inv == inverses.end()) inv = inverses.emplace(l.generator, inverse(it->second)).first;
      out = out * inv->second;
    }
  }
  return out;
}

std::map<std::string, NCSeries> loop_images(const Alphabet& alphabet, std::size_t degree) {
  std::map<std::string, NCSeries> images;
  images.emplace("x", exp(NCSeries::letter(alphabet, degree, alphabet.x())));
  for (std::uint64_t k = 0; k < alphabet.modulus(); ++k) {
    images.emplace("y" + std::to_string(k),
                   exp(NCSeries::letter(alphabet, degree, alphabet.y(static_cast<std::int64_t>(k)))));
  }
  return images;
}

// ---- Conjugation / cocycle calculus ----------------------------------------

Conjugation Conjugation::identity(const Alphabet& alphabet, std::size_t degree) {
  return Conjugation(Substitution::identity(alphabet, degree), Substitution::identity(alphabet, degree));
}

Conjugation Conjugation::by_element(const NCSeries& alpha) {
  const NCSeries alpha_inv = inverse(alpha);
  Substitution fwd(alpha.alphabet(), alpha.degree());
  Substitution bwd(alpha.alphabet(), alpha.degree());
  for (std::size_t c = 0; c < alpha.alphabet().size(); ++c) {
    const Letter l = alpha.alphabet().letter(c);
    const NCSeries u = NCSeries::letter(alpha.alphabet(), alpha.degree(), l);
    fwd.set(l, alpha_inv * u * alpha);
    bwd.set(l, alpha * u * alpha_inv);
  }
  return Conjugation(std::move(fwd), std::move(bwd));
}

Conjugation Conjugation::from_substitutions(Substitution forward, Substitution backward) {
  return Conjugation(std::move(forward), std::move(backward));
}

namespace {

void require_unit_constant(const NCSeries& f, const char* what) {
  if (f.constant_term() != Rational(1)) {
    throw DomainError(std::string(what) + " must have constant term 1");
  }
}

}  // namespace

NCSeries compose_cocycle(const NCSeries& f_beta, const NCSeries& f_alpha, const Conjugation& alpha) {
  require_unit_constant(f_beta, "f_beta");
  require_unit_constant(f_alpha, "f_alpha");
  return alpha.forward(f_beta) * f_alpha;
}

NCSeries inverse_cocycle(const NCSeries& f_alpha, const Conjugation& alpha) {
  require_unit_constant(f_alpha, "f_alpha");
  return alpha.backward(inverse(f_alpha));
}

PathCocycle::PathCocycle(Alphabet alphabet, std::size_t degree) : alphabet_(alphabet), degree_(degree) {}

void PathCocycle::set(const std::string& path, NCSeries value) {
  if (!is_known_generator(path, alphabet_)) throw DomainError("unknown path name '" + path + "'");
  if (!(value.alphabet() == alphabet_) || value.degree() != degree_) {
    throw DomainError("cocycle value for '" + path + "' has the wrong alphabet or degree");
  }
  require_unit_constant(value, "cocycle value");
  values_.insert_or_assign(path, std::move(value));
}

const NCSeries& PathCocycle::at(const std::string& path) const {
  const auto it = values_.find(path);
  if (it == values_.end()) throw DomainError("cocycle has no value for path '" + path + "'");
  return it->second;
}

// ---- presets ----------------------------------------------------------------

Substitution rotate_r(const Alphabet& alphabet, std::size_t degree) {
  Substitution s(alphabet, degree);
  s.set(alphabet.x(), NCSeries::letter(alphabet, degree, alphabet.x()));
  for (std::uint64_t i = 0; i < alphabet.modulus(); ++i) {
    const auto k = static_cast<std::int64_t>(i);
    s.set(alphabet.y(k), NCSeries::letter(alphabet, degree, alphabet.y(k + 1)));
  }
  return s;
}

Substitution invert_k(const Alphabet& alphabet, std::size_t degree, std::optional<NCSeries> x_image) {
  Substitution s(alphabet, degree);
  if (x_image) s.set(alphabet.x(), std::move(*x_image));
  for (std::uint64_t i = 0; i < alphabet.modulus(); ++i) {
    const auto k = static_cast<std::int64_t>(i);
    s.set(alphabet.y(k), NCSeries::letter(alphabet, degree, alphabet.y(-k)));
  }
  return s;
}

Substitution preset(PresetName name, const Alphabet& alphabet, std::size_t degree) {
  return name == PresetName::rotate_R ? rotate_r(alphabet, degree) : invert_k(alphabet, degree);
}

PathWord inversion_x_image(const Alphabet& alphabet, InversionXReading reading) {
  const std::uint64_t N = alphabet.modulus();
  auto y = [](std::uint64_t k) { return PathWord::generator("y" + std::to_string(k), -1); };
  PathWord w;
  if (reading == InversionXReading::as_printed) {
    w = y(1 % N) * y(2 % N) * y((N + N - 1) % N);
  } else {
    for (std::uint64_t k = 1; k < N; ++k) w = w * y(k);
  }
  return w * PathWord::generator("x", -1) * y(0);
}

// ---- octagon / rhombus ------------------------------------------------------

const std::array<std::pair<std::string_view, std::string_view>, 8>& octagon_layout() {
  static const std::array<std::pair<std::string_view, std::string_view>, 8> layout = {{
      {"s", "alpha6"},
      {"c", "alpha5"},
      {"e", "alpha4"},
      {"d", "alpha3"},
      {"eta", "alpha2"},
      {"q", "alpha1"},
      {"t", "pi"},
      {"pi", ""},
  }};
  return layout;
}

PathWord octagon_alpha(int k) {
  if (k < 1 || k > 6) throw DomainError("octagon alpha index must be 1..6");
  static const std::array<const char*, 5> heads = {"q", "eta", "d", "e", "c"};
  PathWord w = PathWord::generator("t") * PathWord::generator("pi");
  for (int i = 2; i <= k; ++i) w = PathWord::generator(heads[i - 2]) * w;
  return w;
}

PathWord octagon_relation() { return PathWord::generator("s") * octagon_alpha(6); }

NCSeries octagon_product(const PathCocycle& cocycle, const std::map<std::string, Conjugation>& conjugators) {
  NCSeries out = NCSeries::one(cocycle.alphabet(), cocycle.degree());
  for (const auto& [factor, conjugator] : octagon_layout()) {
    const NCSeries& f = cocycle.at(std::string(factor));
    const auto it = conjugators.find(std::string(factor));
    out = out * (it == conjugators.end() ? f : it->second.forward(f));
  }
  return out;
}

PathCocycle rhombus_cocycle(const NCSeries& f_pi) {
  const Alphabet& A = f_pi.alphabet();
  const std::size_t D = f_pi.degree();
  const Substitution R = rotate_r(A, D);
  const Substitution K = invert_k(A, D);
  const NCSeries f_pi_inv = inverse(f_pi);
  PathCocycle c(A, D);
  const NCSeries one = NCSeries::one(A, D);
  for (const char* trivial : {"s", "e", "eta", "t"}) c.set(trivial, one);
  c.set("pi", f_pi);
  c.set("c", R.apply(f_pi_inv));
  c.set("d", R.apply(K.apply(f_pi)));
  c.set("q", K.apply(f_pi_inv));
  return c;
}

namespace {

// 1 + sign * sum_i a_i Y_{map(i)} with map(x) = mult*x + shift per coordinate.
NCSeries rhombus_factor(const LambdaTable& t, const Alphabet& A, int sign, int mult, std::int64_t shift) {
  const ResidueGrid& g = t.grid();
  NCSeries s = NCSeries::one(A, g.depth());
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (t[i].is_zero()) continue;
    const Cell image = g.cell(g.affine_image(i, mult, shift));
    s.add_term(y_word(A, image), sign > 0 ? t[i] : -t[i]);
  }
  return s;
}

}  // namespace

NCSeries rhombus_product(const LambdaTable& t) {
  const Alphabet A = alphabet_of(t.grid());
  return rhombus_factor(t, A, -1, 1, 1) * rhombus_factor(t, A, +1, -1, 1) *
         rhombus_factor(t, A, -1, -1, 0) * rhombus_factor(t, A, +1, 1, 0);
}

LambdaTable rhombus_coefficients(const LambdaTable& t) {
  NCSeries defect = rhombus_product(t);
  defect -= NCSeries::one(defect.alphabet(), defect.degree());
  return to_lambda_table(defect, t.grid().depth());
}

}  // namespace lmzv
