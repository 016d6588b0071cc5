#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lmzv/ncseries.hpp"

namespace lmzv {

struct PathLetter {
  std::string generator;
  int exponent = 1;  // +1 or -1

  friend bool operator==(const PathLetter&, const PathLetter&) = default;
};

/// A freely reduced word in named generators: loops x, y0..y{p^n-1} and the
/// opaque base paths pi, q, c, d, s, t, e, eta, alpha1..alpha6.
class PathWord {
 public:
  PathWord() = default;

  static PathWord generator(std::string name, int exponent = 1);
  /// "t*pi", "alpha2^-1*y3*alpha2", "1" for the identity.
  static PathWord parse(std::string_view text);

  const std::vector<PathLetter>& letters() const { return letters_; }
  bool is_identity() const { return letters_.empty(); }

  PathWord inverse() const;
  friend PathWord operator*(const PathWord& a, const PathWord& b);

  std::string to_string() const;

  friend bool operator==(const PathWord&, const PathWord&) = default;

 private:
  void push(PathLetter l);
  std::vector<PathLetter> letters_;
};

/// True for x, y<k> with k < p^n, and the named base paths.
bool is_known_generator(std::string_view name, const Alphabet& alphabet);

/// Evaluates a word multiplicatively; generator inverses map to series
/// inverses. Throws DomainError for a generator without an image.
NCSeries evaluate(const PathWord& w, const std::map<std::string, NCSeries>& images,
                  const Alphabet& alphabet, std::size_t degree);

/// E_n on loops: x -> exp X, y<k> -> exp Y_k.
std::map<std::string, NCSeries> loop_images(const Alphabet& alphabet, std::size_t degree);

/// The action u -> alpha^-1 u alpha of a path alpha on series, together with
/// its inverse u -> alpha u alpha^-1, both as algebra automorphisms.
class Conjugation {
 public:
  static Conjugation identity(const Alphabet& alphabet, std::size_t degree);
  /// Inner conjugation by the series image of alpha (constant term nonzero).
  static Conjugation by_element(const NCSeries& alpha);
  /// `forward` and `backward` must be mutually inverse; not verified.
  static Conjugation from_substitutions(Substitution forward, Substitution backward);

  NCSeries forward(const NCSeries& u) const { return forward_.apply(u); }
  NCSeries backward(const NCSeries& u) const { return backward_.apply(u); }
  Conjugation inverted() const { return Conjugation(backward_, forward_); }

 private:
  Conjugation(Substitution f, Substitution b) : forward_(std::move(f)), backward_(std::move(b)) {}
  Substitution forward_;
  Substitution backward_;
};

/// f_{beta.alpha} = alpha^-1 f_beta alpha . f_alpha.
NCSeries compose_cocycle(const NCSeries& f_beta, const NCSeries& f_alpha,
                         const Conjugation& alpha);
/// f_{alpha^-1} = alpha f_alpha^-1 alpha^-1.
NCSeries inverse_cocycle(const NCSeries& f_alpha, const Conjugation& alpha);

/// Series values of the cocycle f_gamma on named base paths; every value has
/// constant term 1 and all share one alphabet and truncation degree.
class PathCocycle {
 public:
  PathCocycle(Alphabet alphabet, std::size_t degree);

  void set(const std::string& path, NCSeries value);
  bool contains(const std::string& path) const { return values_.contains(path); }
  /// Throws DomainError for an unassigned path.
  const NCSeries& at(const std::string& path) const;
  const std::map<std::string, NCSeries>& values() const { return values_; }

  const Alphabet& alphabet() const { return alphabet_; }
  std::size_t degree() const { return degree_; }

 private:
  Alphabet alphabet_;
  std::size_t degree_;
  std::map<std::string, NCSeries> values_;
};

enum class PresetName { rotate_R, invert_K };

/// Y_i -> Y_{i+1}, X -> X (the induced action of z -> xi z on lowest-depth terms).
Substitution rotate_r(const Alphabet& alphabet, std::size_t degree);
/// Y_i -> Y_{-i}, Y_0 -> Y_0; X -> x_image when given, otherwise X has no
/// image and applying the preset to a series containing X throws.
Substitution invert_k(const Alphabet& alphabet, std::size_t degree,
                      std::optional<NCSeries> x_image = std::nullopt);
Substitution preset(PresetName name, const Alphabet& alphabet, std::size_t degree);

/// Two readings of the printed image of x under inversion: the five listed
/// factors only, or with y3^-1 .. y{p^n-2}^-1 filled in between.
enum class InversionXReading { as_printed, with_missing_factors };
PathWord inversion_x_image(const Alphabet& alphabet, InversionXReading reading);

/// Octagon factors in product order with the path conjugating each one.
/// The last factor (pi) is unconjugated and has an empty conjugator name.
const std::array<std::pair<std::string_view, std::string_view>, 8>& octagon_layout();

/// alpha_k = (path) . alpha_{k-1} with alpha_1 = t . pi, k = 1..6.
PathWord octagon_alpha(int k);
/// s . c . e . d . eta . q . t . pi, which is trivial in the fundamental group.
PathWord octagon_relation();

/// The eight-factor octagon product
///   alpha6^-1 f_s alpha6 . alpha5^-1 f_c alpha5 ... pi^-1 f_t pi . f_pi.
/// `conjugators` is keyed by factor name (s, c, e, d, eta, q, t); a missing
/// entry is the identity conjugation. Throws DomainError for a missing factor.
NCSeries octagon_product(const PathCocycle& cocycle,
                         const std::map<std::string, Conjugation>& conjugators);

/// Cocycle values forced by f_pi = F with trivial conjugations:
///   f_c = R(F^-1), f_d = R(K(F)), f_q = K(F^-1), f_s = f_e = f_eta = f_t = 1.
PathCocycle rhombus_cocycle(const NCSeries& f_pi);

/// (1 - sum a Y_{i+1}..)(1 + sum a Y_{-i+1}..)(1 - sum a Y_{-i}..)(1 + sum a Y_i..)
/// modulo I^(r+1), index maps applied coordinate-wise.
NCSeries rhombus_product(const LambdaTable& t);

/// Coefficients of rhombus_product(t) - 1 on the depth-r Y-pure words.
LambdaTable rhombus_coefficients(const LambdaTable& t);

}  // namespace lmzv
