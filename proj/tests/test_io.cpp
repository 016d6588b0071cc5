#include <gtest/gtest.h>

#include <filesystem>

#include "lmzv/error.hpp"
#include "lmzv/io.hpp"
#include "support.hpp"

using namespace lmzv;
using io::Json;

TEST(Io, RationalAndValuation) {
  EXPECT_EQ(io::to_json(Rational::parse("-3/4")), Json("-3/4"));
  EXPECT_EQ(io::rational_from_json(Json("6/8")), Rational::parse("3/4"));
  EXPECT_EQ(io::rational_from_json(Json(5)), Rational(5));
  EXPECT_THROW(io::rational_from_json(Json("1/0")), ParseError);
  EXPECT_THROW(io::rational_from_json(Json(0.5)), ParseError);
  EXPECT_THROW(io::rational_from_json(Json("x")), ParseError);

  EXPECT_EQ(io::to_json(Valuation::infinite()), Json("+inf"));
  EXPECT_EQ(io::to_json(Valuation::finite(-2)), Json(-2));
  EXPECT_EQ(io::valuation_from_json(Json("+inf")), Valuation::infinite());
  EXPECT_EQ(io::valuation_from_json(Json(3)), Valuation::finite(3));
  EXPECT_THROW(io::valuation_from_json(Json("inf")), ParseError);
}

TEST(Io, SeriesExactText) {
  const Alphabet a(2, 1);
  NCSeries s = NCSeries::one(a, 2);
  s.add_term(Monomial::parse("X.Y1", a), Rational::parse("1/2"));
  EXPECT_EQ(io::dump(io::to_json(s)),
            "{\n"
            "  \"D\": 2,\n"
            "  \"n\": 1,\n"
            "  \"p\": 2,\n"
            "  \"terms\": [\n"
            "    {\n"
            "      \"coeff\": \"1\",\n"
            "      \"word\": \"\"\n"
            "    },\n"
            "    {\n"
            "      \"coeff\": \"1/2\",\n"
            "      \"word\": \"X.Y1\"\n"
            "    }\n"
            "  ]\n"
            "}\n");
}

TEST(Io, RoundTrips) {
  gen::Rng rng(80);
  const Alphabet a(3, 1);
  for (int trial = 0; trial < 10; ++trial) {
    const NCSeries s = gen::augmentation_series(rng, a, 4, 6, 4);
    EXPECT_EQ(io::series_from_json(io::parse(io::dump(io::to_json(s)))), s);
  }

  const ResidueGrid g(3, 1, 2);
  const LevelMeasure mu = gen::rational_measure(rng, g);
  EXPECT_EQ(io::measure_from_json(io::to_json(mu)), mu);
  const LambdaTable t = as_table(mu);
  EXPECT_EQ(io::table_from_json(io::to_json(t)), t);

  const auto cert = make_certificate(std::vector<std::uint64_t>{2}, 3, 2);
  EXPECT_EQ(io::certificate_from_json(io::to_json(cert)), cert);

  const CheckVerdict v{Rational(6), Valuation::finite(1), 0, true};
  const CheckVerdict back = io::verdict_from_json(io::to_json(v));
  EXPECT_EQ(back.value, v.value);
  EXPECT_EQ(back.valuation, v.valuation);
  EXPECT_EQ(back.threshold, v.threshold);
  EXPECT_EQ(back.pass, v.pass);

  const KernelBasis k = four_term_kernel(3, 1, 2);
  const KernelBasis kb = io::kernel_from_json(io::to_json(k));
  EXPECT_EQ(kb.grid, k.grid);
  EXPECT_EQ(kb.basis, k.basis);

  PathCocycle f(a, 3);
  f.set("pi", NCSeries::one(a, 3) + gen::augmentation_series(rng, a, 3, 4, 3));
  f.set("s", NCSeries::one(a, 3));
  const PathCocycle fb = io::cocycle_from_json(io::to_json(f));
  EXPECT_EQ(fb.values(), f.values());
}

TEST(Io, CertificateText) {
  EXPECT_EQ(io::to_json(make_certificate(std::vector<std::uint64_t>{}, 1, 2)).dump(),
            R"({"combination":[{"coeff":"-1/4","q":2}],"p":2,"slack":2,"target":[1]})");
}

TEST(Io, MalformedInputRejected) {
  EXPECT_THROW(io::parse("{not json"), ParseError);
  EXPECT_THROW(io::measure_from_json(Json::array()), ParseError);
  EXPECT_THROW(io::measure_from_json(io::parse(R"({"p":2,"n":1,"r":1,"values":["1"]})")), ParseError);
  EXPECT_THROW(io::measure_from_json(io::parse(R"({"p":4,"n":1,"r":1,"values":["1","2","3","4"]})")), ParseError);
  EXPECT_THROW(io::measure_from_json(io::parse(R"({"p":2,"n":-1,"r":1,"values":[]})")), ParseError);
  EXPECT_THROW(io::series_from_json(io::parse(R"({"p":2,"n":1,"D":1,"terms":[{"word":"X.X","coeff":"1"}]})")),
               ParseError);
  EXPECT_THROW(io::series_from_json(io::parse(R"({"p":2,"n":1,"D":2,"terms":[{"word":"Y2","coeff":"1"}]})")),
               ParseError);
  EXPECT_THROW(io::certificate_from_json(io::parse(R"({"target":[],"combination":[],"p":2,"slack":0})")),
               ParseError);
  EXPECT_THROW(io::verdict_from_json(io::parse(R"({"value":"1","valuation":0,"threshold":0,"pass":1})")),
               ParseError);
  EXPECT_THROW(io::kernel_from_json(Json::array()), ParseError);
  EXPECT_THROW(io::cocycle_from_json(Json::object()), ParseError);
  EXPECT_THROW(io::read_file("/nonexistent/lmzv.json"), ParseError);
}

TEST(Io, FileRoundTrip) {
  const auto path = std::filesystem::temp_directory_path() / "lmzv_io_test.json";
  const Json j = io::to_json(LevelMeasure::constant(ResidueGrid(2, 1, 1), Rational(1)));
  io::write_file(path, j);
  EXPECT_EQ(io::read_file(path), j);
  std::filesystem::remove(path);
}
