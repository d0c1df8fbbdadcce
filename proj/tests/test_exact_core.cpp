// This file is part of zml.
//
// zml: certified arithmetic for moment-polynomial coefficient asymptotics.
//
// Distributed under the MIT license; see the LICENSE file at the project
// root for the full text.
//
// Exact rationals, certified balls, truncated series, and exact
// polynomial interpolation: the arithmetic substrate everything else
// stands on. Every assertion here is deterministic; ball checks assert
// containment of exactly-known values, never floating comparisons.

#include <catch2/catch_amalgamated.hpp>

#include <string>
#include <vector>

#include <zml/ball.hpp>
#include <zml/config.hpp>
#include <zml/kpoly.hpp>
#include <zml/rational.hpp>
#include <zml/series.hpp>

using zml::BallValue;
using zml::ExactRational;

TEST_CASE("exact rationals canonicalize and parse", "[rational]") {
    SECTION("construction and canonical form") {
        CHECK(ExactRational(2, 4) == ExactRational(1, 2));
        CHECK(ExactRational(-3, -6) == ExactRational(1, 2));
        CHECK(ExactRational(3, -6) == ExactRational(-1, 2));
        CHECK(ExactRational(0, 7) == ExactRational(0));
        CHECK_THROWS_AS(ExactRational(1, 0), zml::Error);
    }

    SECTION("string forms") {
        CHECK(ExactRational("22/7") == ExactRational(22, 7));
        CHECK(ExactRational("-14") == ExactRational(-14));
        // Decimal text converts exactly, no binary rounding.
        CHECK(ExactRational("100000000.643") ==
              ExactRational("100000000643") / ExactRational(1000));
        CHECK(ExactRational("0.125") == ExactRational(1, 8));
        CHECK_THROWS_AS(ExactRational("seven"), zml::Error);
    }

    SECTION("scientific notation parses to the exact printed value") {
        CHECK(zml::rational_from_scientific("1.5e3") == ExactRational(1500));
        CHECK(zml::rational_from_scientific("1.6737234985e+09") ==
              ExactRational("1673723498.5"));
        CHECK(zml::rational_from_scientific("-2.5e-2") ==
              ExactRational(-1, 40));
        // A 10-digit mantissa at exponent -148 survives exactly.
        const ExactRational tiny =
            zml::rational_from_scientific("3.548884925e-148");
        CHECK(tiny * ExactRational(10).pow(157) ==
              ExactRational(3548884925L));
        CHECK_THROWS_AS(zml::rational_from_scientific("1e"), zml::Error);
        CHECK_THROWS_AS(zml::rational_from_scientific("1e4x"), zml::Error);
    }

    SECTION("field operations and powers") {
        const ExactRational a(3, 7), b(-2, 5);
        CHECK(a + b == ExactRational(1, 35));
        CHECK(a * b == ExactRational(-6, 35));
        CHECK(a / b == ExactRational(-15, 14));
        CHECK(a.pow(3) == ExactRational(27, 343));
        CHECK(a.pow(-2) == ExactRational(49, 9));
        CHECK(ExactRational(0).pow(3) == ExactRational(0));
        CHECK_THROWS_AS(ExactRational(0).pow(-1), zml::Error);
        CHECK_THROWS_AS(a / ExactRational(0), zml::Error);
    }

    SECTION("factorials and binomials") {
        CHECK(zml::factorial(0) == ExactRational(1));
        CHECK(zml::factorial(10) == ExactRational(3628800));
        CHECK(zml::binomial(10, 3) == ExactRational(120));
        CHECK(zml::binomial(10, 0) == ExactRational(1));
        CHECK(zml::binomial(10, 11) == ExactRational(0));
        CHECK(zml::binomial(10, -1) == ExactRational(0));
        // Pascal identity on a larger instance.
        CHECK(zml::binomial(100, 50) ==
              zml::binomial(99, 49) + zml::binomial(99, 50));
    }
}

TEST_CASE("balls contain the exact results of arithmetic", "[ball]") {
    const unsigned bits = 128;

    SECTION("constructors enclose their exact values") {
        CHECK(BallValue::from_si(-7, bits).contains_rational(
            ExactRational(-7)));
        CHECK(BallValue::from_rational(ExactRational(1, 3), bits)
                  .contains_rational(ExactRational(1, 3)));
        // Text with a fractional part models print uncertainty: the
        // radius is half an ulp of the last printed digit.
        const BallValue printed = BallValue::from_decimal("1.5", bits);
        CHECK(printed.contains_rational(ExactRational(3, 2)));
        CHECK(printed.contains_rational(ExactRational("1.52")));
        CHECK_FALSE(printed.contains_rational(ExactRational("1.6")));
    }

    SECTION("ring and field operations preserve containment") {
        const std::vector<ExactRational> samples = {
            ExactRational(1, 3),    ExactRational(-7, 11),
            ExactRational(355, 113), ExactRational("0.001"),
            ExactRational(-1000000, 7)};
        for (const ExactRational& x : samples) {
            const BallValue bx = BallValue::from_rational(x, bits);
            for (const ExactRational& y : samples) {
                const BallValue by = BallValue::from_rational(y, bits);
                CHECK((bx + by).contains_rational(x + y));
                CHECK((bx - by).contains_rational(x - y));
                CHECK((bx * by).contains_rational(x * y));
                CHECK((bx / by).contains_rational(x / y));
            }
            CHECK(pow_ui(bx, 5).contains_rational(x.pow(5)));
            CHECK(bx.abs_val().contains_rational(x.sign() < 0 ? -x : x));
            CHECK(bx.mul_2exp(7).contains_rational(x * ExactRational(128)));
            CHECK(bx.mul_si(-9).contains_rational(x * ExactRational(-9)));
        }
    }

    SECTION("functions invert each other inside the enclosure") {
        const BallValue x = BallValue::from_rational(ExactRational(7, 5), bits);
        CHECK(sqrt(x * x).overlaps(x));
        CHECK(log(exp(x)).overlaps(x));
        CHECK(exp(log(x)).overlaps(x));
        CHECK(pow_ui(root_ui(x, 6), 6).overlaps(x));
        CHECK(root_ui(pow_ui(x, 6), 6).overlaps(x));
    }

    SECTION("division by a zero-straddling ball is refused") {
        BallValue z = BallValue::zero(bits);
        z.add_error_2exp(-10);
        const BallValue one = BallValue::one(bits);
        CHECK_THROWS_AS(one / z, zml::Error);
        try {
            (void)(one / z);
        } catch (const zml::Error& e) {
            CHECK(e.code() == zml::errc::resource);
        }
    }

    SECTION("domain violations in sqrt/log are refused") {
        const BallValue neg = BallValue::from_si(-2, bits);
        CHECK_THROWS_AS(sqrt(neg), zml::Error);
        CHECK_THROWS_AS(log(neg), zml::Error);
    }
}

TEST_CASE("certified comparisons are three-valued", "[ball]") {
    const unsigned bits = 96;
    const BallValue two = BallValue::from_si(2, bits);
    const BallValue three = BallValue::from_si(3, bits);
    BallValue wide = BallValue::from_rational(ExactRational(5, 2), bits);
    wide.add_error_2exp(0); // radius 1: spans [1.5, 3.5]

    SECTION("disjoint balls order certainly") {
        CHECK(two.certainly_lt(three));
        CHECK(two.certainly_le(three));
        CHECK_FALSE(three.certainly_le(two));
    }
    SECTION("overlapping balls certify nothing") {
        CHECK(wide.overlaps(two));
        CHECK(wide.overlaps(three));
        CHECK_FALSE(wide.certainly_le(three));
        CHECK_FALSE(three.certainly_le(wide));
    }
    SECTION("equal exact balls satisfy weak but not strict order") {
        CHECK(two.certainly_le(two));
        CHECK_FALSE(two.certainly_lt(two));
    }
    SECTION("zero detection") {
        BallValue z = BallValue::zero(bits);
        CHECK(z.contains_zero());
        z.add_error_2exp(-5);
        CHECK(z.contains_zero());
        CHECK_FALSE(two.contains_zero());
    }
}

TEST_CASE("built-in constants match 40-digit references", "[ball]") {
    // Reference digits computed independently with mpmath at 50 digits.
    const unsigned bits = 192;
    const auto matches = [&](const BallValue& v, const std::string& digits) {
        return v.overlaps(BallValue::from_decimal(digits, bits));
    };
    CHECK(matches(BallValue::pi(bits),
                  "3.141592653589793238462643383279502884197"));
    CHECK(matches(BallValue::log2_const(bits),
                  "0.6931471805599453094172321214581765680755"));
    CHECK(matches(BallValue::euler_const(bits),
                  "0.5772156649015328606065120900824024310422"));
    CHECK(matches(BallValue::zeta_of_ui(2, bits),
                  "1.644934066848226436472415166646025189219"));
    CHECK(matches(BallValue::zeta_of_ui(3, bits),
                  "1.202056903159594285399738161511449990765"));
}

TEST_CASE("printing exposes certified digits and bignum radii", "[ball]") {
    const unsigned bits = 256;
    SECTION("requested digits round the midpoint") {
        const BallValue v = BallValue::from_decimal("3.548884925e-148", bits);
        CHECK(v.to_string(10) == "3.548884925e-148");
        CHECK(v.to_string(4) == "3.549e-148");
    }
    SECTION("default digit count reflects the radius") {
        // Half an ulp in the 10th digit certifies no more than ~9 digits.
        const BallValue v = BallValue::from_decimal("1.234567890", bits);
        const long certified = v.certified_decimal_digits();
        CHECK(certified >= 8);
        CHECK(certified <= 10);
    }
    SECTION("radius prints from the bignum, immune to double underflow") {
        BallValue v = BallValue::from_rational(ExactRational(1), bits);
        CHECK(v.radius_string() == "0");
        v.add_error_2exp(-5000); // far below double range
        CHECK(v.radius_string() != "0");
        CHECK(v.radius_string().find("e-15") != std::string::npos);
    }
    SECTION("exactness is tracked") {
        CHECK(BallValue::from_si(42, bits).is_exact());
        CHECK_FALSE(BallValue::from_rational(ExactRational(1, 3), bits)
                        .is_exact());
    }
}

TEST_CASE("truncated series compose, log, and exponentiate", "[series]") {
    using zml::TruncatedSeries;
    const unsigned order = 12;

    // f = 1 + x + x^2 + ... (geometric); log f = -log(1-x) = sum x^m/m.
    TruncatedSeries geo(order);
    for (unsigned m = 0; m <= order; ++m) geo.set(m, ExactRational(1));
    const TruncatedSeries lg = zml::series_log(geo);
    for (unsigned m = 1; m <= order; ++m)
        CHECK(lg[m] == ExactRational(1, static_cast<long>(m)));

    // exp inverts log term by term.
    const TruncatedSeries back = zml::series_exp(lg);
    for (unsigned m = 0; m <= order; ++m) CHECK(back[m] == geo[m]);
}

TEST_CASE("polynomial interpolation reconstructs exact polynomials",
          "[kpoly]") {
    using zml::KPolynomial;

    SECTION("evaluate agrees with the coefficient form") {
        // p(k) = 24k^3 + 72k^2 + 48k
        const KPolynomial p({ExactRational(0), ExactRational(48),
                             ExactRational(72), ExactRational(24)});
        CHECK(p.degree() == 3);
        CHECK(p.evaluate(ExactRational(5)) == ExactRational(5040));
        CHECK(p.evaluate(ExactRational(-1)) == ExactRational(0));
    }

    SECTION("interpolation through exact nodes recovers the polynomial") {
        const KPolynomial p({ExactRational(-3, 2), ExactRational(0),
                             ExactRational(7), ExactRational(0),
                             ExactRational(1, 3)});
        std::vector<std::pair<long, ExactRational>> nodes;
        for (long x = 2; x <= 6; ++x)
            nodes.emplace_back(x, p.evaluate(ExactRational(x)));
        const KPolynomial q = zml::poly_interpolate(nodes);
        CHECK(q.degree() == p.degree());
        for (std::size_t i = 0; i <= 4; ++i) CHECK(q.coeff(i) == p.coeff(i));
    }
}
