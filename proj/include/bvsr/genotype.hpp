#pragma once
// Genotype and phenotype containers plus the text-format readers/writers.
//
// Mean-genotype format: one SNP per line,
//     snp_id, allele1, allele0, d_1, ..., d_n
// separated by commas and/or whitespace. Dosages are reals in [0,2]; the
// token "NA" marks a missing value. Rows are SNPs, columns individuals.

#include <Eigen/Dense>

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace bvsr {

struct SnpInfo {
    std::string id;
    std::string allele1;
    std::string allele0;
    std::string chromosome;
    std::int64_t position = -1;  // base pairs, -1 when unknown
};

enum class GenotypeFormat { MeanGenotype };

// n x p dosage matrix. Columns with zero variance after centering are kept
// for index stability but flagged degenerate; the sampler never proposes them.
struct GenotypeMatrix {
    Eigen::MatrixXd values;                       // n x p
    std::vector<SnpInfo> snps;                    // length p
    Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic> missing;  // n x p
    Eigen::VectorXd col_mean;                     // observed-entry means, set by centering
    Eigen::VectorXd col_variance;                 // s_j = (1/n) sum_i x_ij^2 on centered data
    std::vector<bool> degenerate;                 // s_j == 0
    bool centered = false;

    [[nodiscard]] Eigen::Index n() const { return values.rows(); }
    [[nodiscard]] Eigen::Index p() const { return values.cols(); }
    [[nodiscard]] Eigen::Index eligible_count() const;
};

struct Phenotype {
    Eigen::VectorXd values;
    std::vector<bool> missing;
    bool normalized = false;
    bool centered = false;
    double mean = 0.0;  // mean removed by center_phenotype

    [[nodiscard]] Eigen::Index n() const { return values.size(); }
};

GenotypeMatrix parse_mean_genotypes(std::istream& in);
GenotypeMatrix load_genotypes(const std::filesystem::path& path,
                              GenotypeFormat format = GenotypeFormat::MeanGenotype);

// "snp_id chromosome position" per line; unknown ids are ignored.
void parse_positions(std::istream& in, GenotypeMatrix& g);
void load_positions(const std::filesystem::path& path, GenotypeMatrix& g);

// One value per line, "NA" for missing.
Phenotype parse_phenotype(std::istream& in);
Phenotype load_phenotype(const std::filesystem::path& path);

// Drops individuals with missing phenotype from both inputs so rows stay aligned.
void drop_missing_individuals(GenotypeMatrix& g, Phenotype& y);

GenotypeMatrix impute_and_center(GenotypeMatrix g);

Phenotype center_phenotype(Phenotype y);

// Inverse-normal transform of average ranks: Phi^-1(r_i / (n + 1)).
Phenotype quantile_normalize(const Phenotype& y);

void write_mean_genotypes(std::ostream& out, const GenotypeMatrix& g);
void write_positions(std::ostream& out, const GenotypeMatrix& g);
void write_phenotype(std::ostream& out, const Eigen::VectorXd& values, int precision = 17);

}  // namespace bvsr
