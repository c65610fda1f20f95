#include "tenet/io.hpp"

#include <array>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <openssl/evp.h>

#include "tenet/csv.hpp"
#include "tenet/error.hpp"

namespace tenet::io {

void write_matrix_csv(std::ostream& out, const std::vector<std::string>& row_names,
                      const std::vector<std::string>& col_names, const Matrix& values) {
  out << "variable";
  for (const auto& name : col_names) out << ',' << csv::escape(name);
  out << '\n';
  for (Eigen::Index i = 0; i < values.rows(); ++i) {
    out << csv::escape(row_names.at(static_cast<std::size_t>(i)));
    for (Eigen::Index j = 0; j < values.cols(); ++j) out << ',' << csv::format_double(values(i, j));
    out << '\n';
  }
}

void write_return_panel_csv(std::ostream& out, const ReturnPanel& panel) {
  out << "date";
  for (const auto& v : panel.variables()) out << ',' << csv::escape(v.name());
  out << '\n';
  for (std::size_t t = 0; t < panel.rows(); ++t) {
    out << panel.dates()[t].iso();
    for (Eigen::Index j = 0; j < panel.returns().cols(); ++j) {
      out << ',' << csv::format_double(panel.returns()(static_cast<Eigen::Index>(t), j));
    }
    out << '\n';
  }
}

void write_histogram_csv(std::ostream& out, const Histogram& h) {
  out << "bin_lo,bin_hi,count\n";
  for (std::size_t k = 0; k < h.counts.size(); ++k) {
    out << csv::format_double(h.edges[k]) << ',' << csv::format_double(h.edges[k + 1]) << ','
        << h.counts[k] << '\n';
  }
}

nlohmann::json to_json(const NullBand& band) {
  return nlohmann::json{{"n_sims", band.n_sims},
                        {"seed", band.seed},
                        {"min", {{"mean", band.min_stat.mean}, {"std", band.min_stat.std}}},
                        {"max", {{"mean", band.max_stat.mean}, {"std", band.max_stat.std}}}};
}

std::string sha256_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read '" + path.string() + "' for digest");
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  if (ctx == nullptr || EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1) {
    EVP_MD_CTX_free(ctx);
    throw Error("cannot initialise SHA-256");
  }
  std::array<char, 1 << 16> buffer{};
  while (in) {
    in.read(buffer.data(), buffer.size());
    if (in.gcount() > 0) EVP_DigestUpdate(ctx, buffer.data(), static_cast<std::size_t>(in.gcount()));
  }
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int length = 0;
  EVP_DigestFinal_ex(ctx, digest.data(), &length);
  EVP_MD_CTX_free(ctx);
  std::ostringstream hex;
  for (unsigned int k = 0; k < length; ++k) {
    hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[k]);
  }
  return hex.str();
}

}  // namespace tenet::io
