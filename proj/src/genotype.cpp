#include "bvsr/genotype.hpp"

#include "bvsr/errors.hpp"

#include <boost/math/distributions/normal.hpp>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <sstream>
#include <unordered_map>

namespace bvsr {

namespace {

constexpr const char* kMissingToken = "NA";

std::vector<std::string> split_fields(const std::string& line)
{
    std::vector<std::string> fields;
    std::string current;
    for (char c : line) {
        if (c == ',' || c == ' ' || c == '\t' || c == '\r') {
            if (!current.empty()) {
                fields.push_back(std::move(current));
                current.clear();
            }
        } else {
            current.push_back(c);
        }
    }
    if (!current.empty()) fields.push_back(std::move(current));
    return fields;
}

bool parse_double(const std::string& token, double& out)
{
    // std::from_chars for double is not available in every libstdc++ we build with.
    char* end = nullptr;
    out = std::strtod(token.c_str(), &end);
    return end != token.c_str() && *end == '\0';
}

std::ifstream open_input(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path.string());
    return in;
}

}  // namespace

Eigen::Index GenotypeMatrix::eligible_count() const
{
    if (degenerate.empty()) return p();
    return static_cast<Eigen::Index>(std::count(degenerate.begin(), degenerate.end(), false));
}

GenotypeMatrix parse_mean_genotypes(std::istream& in)
{
    std::vector<SnpInfo> snps;
    std::vector<std::vector<double>> columns;
    std::vector<std::vector<bool>> missing;
    std::size_t n = 0;
    bool have_n = false;

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto fields = split_fields(line);
        if (fields.empty()) continue;
        if (fields.size() < 4) {
            throw ParseError("genotype row " + std::to_string(line_no) +
                             ": expected snp id, two alleles and dosages");
        }
        const std::size_t row_n = fields.size() - 3;
        if (!have_n) {
            n = row_n;
            have_n = true;
        } else if (row_n != n) {
            throw ParseError("genotype row " + std::to_string(line_no) + " (" + fields[0] +
                             "): expected " + std::to_string(n) + " dosages, found " +
                             std::to_string(row_n));
        }
        std::vector<double> col(n, 0.0);
        std::vector<bool> miss(n, false);
        for (std::size_t i = 0; i < n; ++i) {
            const std::string& tok = fields[i + 3];
            if (tok == kMissingToken) {
                miss[i] = true;
                continue;
            }
            double v = 0.0;
            if (!parse_double(tok, v)) {
                throw ParseError("genotype row " + std::to_string(line_no) +
                                 ": cannot parse dosage '" + tok + "'");
            }
            if (!(v >= 0.0 && v <= 2.0)) {
                throw ValidationError("genotype row " + std::to_string(line_no) + " (" +
                                      fields[0] + "): dosage " + tok + " outside [0,2]");
            }
            col[i] = v;
        }
        snps.push_back(SnpInfo{fields[0], fields[1], fields[2], "", -1});
        columns.push_back(std::move(col));
        missing.push_back(std::move(miss));
    }

    GenotypeMatrix g;
    const auto p = static_cast<Eigen::Index>(columns.size());
    const auto nn = static_cast<Eigen::Index>(n);
    g.values.resize(nn, p);
    g.missing.resize(nn, p);
    for (Eigen::Index j = 0; j < p; ++j) {
        for (Eigen::Index i = 0; i < nn; ++i) {
            g.values(i, j) = columns[j][i];
            g.missing(i, j) = missing[j][i];
        }
    }
    g.snps = std::move(snps);
    return g;
}

GenotypeMatrix load_genotypes(const std::filesystem::path& path, GenotypeFormat format)
{
    if (format != GenotypeFormat::MeanGenotype) throw ParseError("unsupported genotype format");
    auto in = open_input(path);
    return parse_mean_genotypes(in);
}

void parse_positions(std::istream& in, GenotypeMatrix& g)
{
    std::unordered_map<std::string, std::size_t> index;
    for (std::size_t j = 0; j < g.snps.size(); ++j) index.emplace(g.snps[j].id, j);

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto fields = split_fields(line);
        if (fields.empty()) continue;
        if (fields.size() < 3) {
            throw ParseError("position row " + std::to_string(line_no) +
                             ": expected 'snp_id chromosome position'");
        }
        auto it = index.find(fields[0]);
        if (it == index.end()) continue;
        std::int64_t pos = 0;
        const auto& tok = fields[2];
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), pos);
        if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
            throw ParseError("position row " + std::to_string(line_no) +
                             ": cannot parse position '" + tok + "'");
        }
        g.snps[it->second].chromosome = fields[1];
        g.snps[it->second].position = pos;
    }
}

void load_positions(const std::filesystem::path& path, GenotypeMatrix& g)
{
    auto in = open_input(path);
    parse_positions(in, g);
}

Phenotype parse_phenotype(std::istream& in)
{
    std::vector<double> values;
    std::vector<bool> missing;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto fields = split_fields(line);
        if (fields.empty()) continue;
        if (fields[0] == kMissingToken) {
            values.push_back(0.0);
            missing.push_back(true);
            continue;
        }
        double v = 0.0;
        if (!parse_double(fields[0], v)) {
            throw ParseError("phenotype line " + std::to_string(line_no) +
                             ": cannot parse '" + fields[0] + "'");
        }
        values.push_back(v);
        missing.push_back(false);
    }
    Phenotype y;
    y.values = Eigen::Map<Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
    y.missing = std::move(missing);
    return y;
}

Phenotype load_phenotype(const std::filesystem::path& path)
{
    auto in = open_input(path);
    return parse_phenotype(in);
}

void drop_missing_individuals(GenotypeMatrix& g, Phenotype& y)
{
    if (g.n() != y.n()) {
        throw DimensionError("genotype file has " + std::to_string(g.n()) +
                             " individuals but phenotype file has " + std::to_string(y.n()));
    }
    std::vector<Eigen::Index> keep;
    for (Eigen::Index i = 0; i < y.n(); ++i) {
        if (!y.missing[static_cast<std::size_t>(i)]) keep.push_back(i);
    }
    if (static_cast<Eigen::Index>(keep.size()) == y.n()) return;

    const auto m = static_cast<Eigen::Index>(keep.size());
    Eigen::MatrixXd values(m, g.p());
    Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic> miss(m, g.p());
    Eigen::VectorXd yv(m);
    for (Eigen::Index r = 0; r < m; ++r) {
        values.row(r) = g.values.row(keep[r]);
        if (g.missing.size() > 0) miss.row(r) = g.missing.row(keep[r]);
        yv(r) = y.values(keep[r]);
    }
    g.values = std::move(values);
    if (g.missing.size() > 0) g.missing = std::move(miss);
    y.values = std::move(yv);
    y.missing.assign(static_cast<std::size_t>(m), false);
}

GenotypeMatrix impute_and_center(GenotypeMatrix g)
{
    const Eigen::Index n = g.n();
    const Eigen::Index p = g.p();
    const bool has_mask = g.missing.rows() == n && g.missing.cols() == p;
    if (!g.centered) {
        g.col_mean.resize(p);
        for (Eigen::Index j = 0; j < p; ++j) {
            double sum = 0.0;
            Eigen::Index observed = 0;
            for (Eigen::Index i = 0; i < n; ++i) {
                if (has_mask && g.missing(i, j)) continue;
                sum += g.values(i, j);
                ++observed;
            }
            if (observed == 0) {
                throw ValidationError("SNP " + (j < static_cast<Eigen::Index>(g.snps.size())
                                                     ? g.snps[static_cast<std::size_t>(j)].id
                                                     : std::to_string(j)) +
                                      " has no observed genotypes");
            }
            const double mean = sum / static_cast<double>(observed);
            for (Eigen::Index i = 0; i < n; ++i) {
                if (has_mask && g.missing(i, j)) g.values(i, j) = mean;
            }
            g.col_mean(j) = mean;
        }
        g.values.rowwise() -= g.col_mean.transpose();
    }
    // A second pass removes any rounding residue so repeated centering is a no-op.
    const Eigen::RowVectorXd residue = g.values.colwise().mean();
    g.values.rowwise() -= residue;
    if (!g.centered) {
        g.col_mean += residue.transpose();
    }

    g.col_variance = g.values.colwise().squaredNorm().transpose() / static_cast<double>(n);
    g.degenerate.assign(static_cast<std::size_t>(p), false);
    for (Eigen::Index j = 0; j < p; ++j) {
        // Constant columns center to exact zeros; anything else has s_j well above this.
        if (g.col_variance(j) <= 1e-20) {
            g.col_variance(j) = 0.0;
            g.values.col(j).setZero();
            g.degenerate[static_cast<std::size_t>(j)] = true;
        }
    }
    g.centered = true;
    return g;
}

Phenotype center_phenotype(Phenotype y)
{
    if (y.centered) return y;
    const double mean = y.values.mean();
    y.values.array() -= mean;
    y.mean = mean;
    y.centered = true;
    return y;
}

Phenotype quantile_normalize(const Phenotype& y)
{
    const Eigen::Index n = y.n();
    if (n < 2) throw ValidationError("quantile normalization needs at least 2 values");
    for (bool m : y.missing) {
        if (m) throw ValidationError("quantile normalization requires no missing values");
    }

    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index a, Eigen::Index b) { return y.values(a) < y.values(b); });

    Eigen::VectorXd rank(n);
    std::size_t start = 0;
    while (start < order.size()) {
        std::size_t end = start + 1;
        while (end < order.size() && y.values(order[end]) == y.values(order[start])) ++end;
        // 1-based ranks start+1 .. end, averaged over the tie group
        const double avg = 0.5 * static_cast<double>(start + 1 + end);
        for (std::size_t k = start; k < end; ++k) rank(order[k]) = avg;
        start = end;
    }

    const boost::math::normal_distribution<double> standard;
    Phenotype out;
    out.values.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        out.values(i) = boost::math::quantile(standard, rank(i) / static_cast<double>(n + 1));
    }
    out.missing.assign(static_cast<std::size_t>(n), false);
    out.normalized = true;
    return out;
}

void write_mean_genotypes(std::ostream& out, const GenotypeMatrix& g)
{
    const bool has_mask = g.missing.rows() == g.n() && g.missing.cols() == g.p();
    std::ostringstream line;
    for (Eigen::Index j = 0; j < g.p(); ++j) {
        const auto& snp = g.snps[static_cast<std::size_t>(j)];
        line.str("");
        line << snp.id << ',' << (snp.allele1.empty() ? "A" : snp.allele1) << ','
             << (snp.allele0.empty() ? "G" : snp.allele0);
        const double offset = g.centered ? g.col_mean(j) : 0.0;
        for (Eigen::Index i = 0; i < g.n(); ++i) {
            line << ',';
            if (has_mask && g.missing(i, j)) {
                line << kMissingToken;
            } else {
                line << std::setprecision(15) << g.values(i, j) + offset;
            }
        }
        out << line.str() << '\n';
    }
}

void write_positions(std::ostream& out, const GenotypeMatrix& g)
{
    for (const auto& snp : g.snps) {
        out << snp.id << ' ' << (snp.chromosome.empty() ? "NA" : snp.chromosome) << ' '
            << snp.position << '\n';
    }
}

void write_phenotype(std::ostream& out, const Eigen::VectorXd& values, int precision)
{
    out << std::setprecision(precision);
    for (Eigen::Index i = 0; i < values.size(); ++i) out << values(i) << '\n';
}

}  // namespace bvsr
