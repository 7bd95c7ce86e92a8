#include "bvsr/errors.hpp"
#include "bvsr/genotype.hpp"

#include <doctest.h>

#include <sstream>

using namespace bvsr;

TEST_CASE("mean-genotype rows parse into columns")
{
    std::istringstream in("rs1,A,G,0,1,2\nrs2 C T 0 NA 2\n");
    const GenotypeMatrix g = parse_mean_genotypes(in);
    REQUIRE(g.n() == 3);
    REQUIRE(g.p() == 2);
    CHECK(g.snps[0].id == "rs1");
    CHECK(g.snps[1].allele1 == "C");
    CHECK(g.values(0, 0) == 0.0);
    CHECK(g.values(1, 0) == 1.0);
    CHECK(g.values(2, 0) == 2.0);
    CHECK(g.missing(1, 1));
    CHECK_FALSE(g.missing(0, 1));
}

TEST_CASE("short genotype row names the row and SNP")
{
    std::istringstream in("rs1,A,G,0,1,2\nrs2,A,G,0,1\n");
    try {
        parse_mean_genotypes(in);
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("row 2") != std::string::npos);
        CHECK(msg.find("rs2") != std::string::npos);
    }
}

TEST_CASE("dosages outside [0,2] and junk tokens are rejected")
{
    std::istringstream bad_range("rs1,A,G,0,2.5,1\n");
    CHECK_THROWS_AS(parse_mean_genotypes(bad_range), ValidationError);
    std::istringstream junk("rs1,A,G,0,x,1\n");
    CHECK_THROWS_AS(parse_mean_genotypes(junk), ParseError);
}

TEST_CASE("centering, imputation and degenerate columns")
{
    std::istringstream in("a,A,G,0,1,2\nb,A,G,0,NA,2\nc,A,G,1,1,1\n");
    const GenotypeMatrix g = impute_and_center(parse_mean_genotypes(in));
    CHECK(g.values(0, 0) == doctest::Approx(-1.0));
    CHECK(g.values(1, 0) == doctest::Approx(0.0));
    CHECK(g.values(2, 0) == doctest::Approx(1.0));
    CHECK(g.col_variance(0) == doctest::Approx(2.0 / 3.0));
    CHECK(g.values(1, 1) == doctest::Approx(0.0));
    CHECK(g.col_mean(1) == doctest::Approx(1.0));
    CHECK(g.values.col(2).isZero());
    CHECK(g.col_variance(2) == 0.0);
    CHECK(g.degenerate[2]);
    CHECK_FALSE(g.degenerate[0]);
    CHECK(g.eligible_count() == 2);
    for (Eigen::Index j = 0; j < g.p(); ++j) CHECK(std::abs(g.values.col(j).mean()) < 1e-10);
}

TEST_CASE("centering twice is a no-op")
{
    std::istringstream in("a,A,G,0,1,2,1,0.3\nb,A,G,0.1,1.7,2,0,0\n");
    const GenotypeMatrix once = impute_and_center(parse_mean_genotypes(in));
    const GenotypeMatrix twice = impute_and_center(once);
    CHECK(once.values == twice.values);
    CHECK(once.col_mean == twice.col_mean);
}

TEST_CASE("a column with no observed genotypes is an error")
{
    std::istringstream in("a,A,G,NA,NA\n");
    CHECK_THROWS_AS(impute_and_center(parse_mean_genotypes(in)), ValidationError);
}

TEST_CASE("phenotype parsing and dropping missing individuals")
{
    std::istringstream gin("a,A,G,0,1,2,1\nb,A,G,2,2,0,1\n");
    GenotypeMatrix g = parse_mean_genotypes(gin);
    std::istringstream pin("1.5\nNA\n-2\n0.25\n");
    Phenotype y = parse_phenotype(pin);
    REQUIRE(y.n() == 4);
    CHECK(y.missing[1]);
    drop_missing_individuals(g, y);
    REQUIRE(g.n() == 3);
    REQUIRE(y.n() == 3);
    CHECK(y.values(1) == -2.0);
    CHECK(g.values(1, 0) == 2.0);
    CHECK(g.values(1, 1) == 0.0);

    std::istringstream short_in("1\n2\n");
    Phenotype y2 = parse_phenotype(short_in);
    CHECK_THROWS_AS(drop_missing_individuals(g, y2), DimensionError);
}

TEST_CASE("phenotype parse errors name the line")
{
    std::istringstream in("1\nabc\n");
    try {
        parse_phenotype(in);
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
}

TEST_CASE("quantile normalization")
{
    Phenotype y;
    y.values = Eigen::Vector3d(3, 1, 2);
    y.missing.assign(3, false);
    const Phenotype q = quantile_normalize(y);
    // Standard normal quantiles at 0.75, 0.25 and 0.5.
    CHECK(q.values(0) == doctest::Approx(0.6744897501960817).epsilon(1e-10));
    CHECK(q.values(1) == doctest::Approx(-0.6744897501960817).epsilon(1e-10));
    CHECK(std::abs(q.values(2)) < 1e-12);

    y.values = Eigen::Vector3d(1, 1, 2);
    const Phenotype t = quantile_normalize(y);
    CHECK(t.values(0) == t.values(1));
    // Average rank 1.5 of 3 -> Phi^-1(0.375).
    CHECK(t.values(0) == doctest::Approx(-0.3186393639643752).epsilon(1e-10));

    Phenotype m = y;
    m.missing[1] = true;
    CHECK_THROWS_AS(quantile_normalize(m), ValidationError);
}

TEST_CASE("quantile normalization preserves ranks")
{
    Phenotype y;
    y.values.resize(7);
    y.values << 0.3, -5, 12, 7.5, 0.1, 2, -1;
    y.missing.assign(7, false);
    const Phenotype q = quantile_normalize(y);
    for (int a = 0; a < 7; ++a) {
        for (int b = 0; b < 7; ++b) CHECK((y.values(a) < y.values(b)) == (q.values(a) < q.values(b)));
    }
}

TEST_CASE("genotype and position files round-trip")
{
    std::istringstream in("rs1,A,G,0,1,2\nrs2,C,T,0.5,NA,2\n");
    GenotypeMatrix g = parse_mean_genotypes(in);
    std::istringstream pos("rs2 3 1500\nrs1 1 200\nunknown 1 5\n");
    parse_positions(pos, g);
    CHECK(g.snps[0].chromosome == "1");
    CHECK(g.snps[0].position == 200);
    CHECK(g.snps[1].position == 1500);

    std::ostringstream out;
    write_mean_genotypes(out, g);
    std::istringstream back(out.str());
    const GenotypeMatrix h = parse_mean_genotypes(back);
    CHECK(h.values(2, 1) == g.values(2, 1));
    CHECK(h.values(0, 1) == g.values(0, 1));
    CHECK(h.missing(1, 1));
    CHECK(h.snps[1].allele0 == "T");

    std::ostringstream pout;
    write_positions(pout, g);
    GenotypeMatrix k = h;
    std::istringstream pback(pout.str());
    parse_positions(pback, k);
    CHECK(k.snps[1].chromosome == "3");
    CHECK(k.snps[1].position == 1500);
}
