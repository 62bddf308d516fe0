#include "ddnoma/ldpc.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace ddnoma {

namespace {

// IEEE 802.11n (Annex R) prototype matrix for n=648, R=2/3, Z=27.
// Entries are circulant shifts of the 27x27 identity, -1 meaning the zero
// block. Columns 0..15 carry the message, 16..23 the parity.
constexpr int kWlanRows = 8;
constexpr int kWlanCols = 24;
constexpr int kWlanZ = 27;
constexpr int kWlan648R23[kWlanRows * kWlanCols] = {
    25, 26, 14, -1, 20, -1,  2, -1,  4, -1, -1,  8, -1, 16, -1, 18,  1,  0, -1, -1, -1, -1, -1, -1,
    10,  9, 15, 11, -1,  0, -1,  1, -1, -1, 18, -1,  8, -1, 10, -1, -1,  0,  0, -1, -1, -1, -1, -1,
    16,  2, 20, 26, 21, -1,  6, -1,  1, 26, -1,  7, -1, -1, -1, -1, -1, -1,  0,  0, -1, -1, -1, -1,
    10, 13,  5,  0, -1,  3, -1,  7, -1, -1, 26, -1, -1, 13, -1, 16, -1, -1, -1,  0,  0, -1, -1, -1,
    23, 14, 24, -1, 12, -1, 19, -1, 17, -1, -1, -1, 20, -1, 21, -1,  0, -1, -1, -1,  0,  0, -1, -1,
     6, 22,  9, 20, -1, 25, -1, 17, -1,  8, -1, 14, -1, 18, -1, -1, -1, -1, -1, -1, -1,  0,  0, -1,
    14, 23, 21, 11, 20, -1, 24, -1, 18, -1, 19, -1, -1, -1, -1, 22, -1, -1, -1, -1, -1, -1,  0,  0,
    17, 11, 11, 20, -1, 21, -1, 26, -1,  3, -1, -1, 18, -1, 26, -1,  1, -1, -1, -1, -1, -1, -1,  0,
};

// c[i] ^= (P^shift s)[i] for one Z-block: cyclic up-shift by `shift`.
void xor_shifted(std::span<const uint8_t> src, int shift, int z, uint8_t* dst) {
  for (int i = 0; i < z; ++i) dst[i] ^= src[(i + shift) % z];
}

}  // namespace

LdpcCode::LdpcCode(int lifting, int block_cols, int block_rows,
                   std::vector<int> base_shifts)
    : z_(lifting), cols_(block_cols), rows_(block_rows), shifts_(std::move(base_shifts)) {
  if (static_cast<int>(shifts_.size()) != cols_ * rows_)
    throw std::invalid_argument("LdpcCode: base matrix size mismatch");
  rows_adj_.assign(static_cast<size_t>(rows_) * z_, {});
  for (int br = 0; br < rows_; ++br) {
    for (int bc = 0; bc < cols_; ++bc) {
      const int sh = shift(br, bc);
      if (sh < 0) continue;
      for (int i = 0; i < z_; ++i) {
        // block row br, lane i checks variable bc*z + (i + sh) mod z
        rows_adj_[br * z_ + i].push_back(bc * z_ + (i + sh) % z_);
      }
    }
  }
  for (auto& row : rows_adj_) std::sort(row.begin(), row.end());
}

LdpcCode LdpcCode::wlan_648_r23() {
  return LdpcCode(kWlanZ, kWlanCols, kWlanRows,
                  std::vector<int>(kWlan648R23, kWlan648R23 + kWlanRows * kWlanCols));
}

std::vector<uint8_t> LdpcCode::encode(std::span<const uint8_t> message) const {
  if (static_cast<int>(message.size()) != message_len())
    throw std::invalid_argument("ldpc encode: message length mismatch");
  const int kb = cols_ - rows_;  // message blocks

  // lambda_r = sum_c P^{a_rc} s_c over the message part
  std::vector<std::vector<uint8_t>> lambda(rows_, std::vector<uint8_t>(z_, 0));
  for (int br = 0; br < rows_; ++br)
    for (int bc = 0; bc < kb; ++bc) {
      const int sh = shift(br, bc);
      if (sh < 0) continue;
      xor_shifted(message.subspan(static_cast<size_t>(bc) * z_, z_), sh, z_,
                  lambda[br].data());
    }

  // The parity part is [h | dual diagonal] with h carrying shifts {1, 0, 1}.
  // Summing all block rows cancels the diagonal and leaves P^0 p_0.
  std::vector<std::vector<uint8_t>> parity(rows_, std::vector<uint8_t>(z_, 0));
  for (int br = 0; br < rows_; ++br)
    for (int i = 0; i < z_; ++i) parity[0][i] ^= lambda[br][i];

  // Walk the dual diagonal: row br relates p_br and p_{br+1}.
  for (int br = 0; br + 1 < rows_; ++br) {
    std::vector<uint8_t> acc = lambda[br];
    const int h_shift = shift(br, kb);
    if (h_shift >= 0) xor_shifted(parity[0], h_shift, z_, acc.data());
    if (br > 0)
      for (int i = 0; i < z_; ++i) acc[i] ^= parity[br][i];
    parity[br + 1] = std::move(acc);
  }

  std::vector<uint8_t> cw(codeword_len());
  std::copy(message.begin(), message.end(), cw.begin());
  for (int br = 0; br < rows_; ++br)
    std::copy(parity[br].begin(), parity[br].end(),
              cw.begin() + static_cast<size_t>(kb + br) * z_);
  return cw;
}

bool LdpcCode::syndrome_ok(std::span<const uint8_t> codeword) const {
  if (static_cast<int>(codeword.size()) != codeword_len()) return false;
  for (const auto& row : rows_adj_) {
    int parity = 0;
    for (int v : row) parity ^= codeword[v] & 1;
    if (parity) return false;
  }
  return true;
}

void LdpcCode::write_alist(std::ostream& os) const {
  const int n = codeword_len();
  const int m = rows_ * z_;
  std::vector<std::vector<int>> cols_adj(n);
  for (int r = 0; r < m; ++r)
    for (int v : rows_adj_[r]) cols_adj[v].push_back(r);

  size_t max_col = 0, max_row = 0;
  for (const auto& c : cols_adj) max_col = std::max(max_col, c.size());
  for (const auto& r : rows_adj_) max_row = std::max(max_row, r.size());

  os << n << ' ' << m << '\n' << max_col << ' ' << max_row << '\n';
  for (int v = 0; v < n; ++v) os << cols_adj[v].size() << (v + 1 < n ? ' ' : '\n');
  for (int r = 0; r < m; ++r) os << rows_adj_[r].size() << (r + 1 < m ? ' ' : '\n');
  for (int v = 0; v < n; ++v) {
    for (size_t k = 0; k < cols_adj[v].size(); ++k)
      os << cols_adj[v][k] + 1 << (k + 1 < cols_adj[v].size() ? ' ' : '\n');
  }
  for (int r = 0; r < m; ++r) {
    for (size_t k = 0; k < rows_adj_[r].size(); ++k)
      os << rows_adj_[r][k] + 1 << (k + 1 < rows_adj_[r].size() ? ' ' : '\n');
  }
}

std::vector<std::vector<int>> LdpcCode::read_alist_rows(std::istream& is, int* n_out,
                                                        int* m_out) {
  int n = 0, m = 0, max_col = 0, max_row = 0;
  if (!(is >> n >> m >> max_col >> max_row))
    throw std::runtime_error("alist: malformed header");
  std::vector<int> col_deg(n), row_deg(m);
  for (int v = 0; v < n; ++v) is >> col_deg[v];
  for (int r = 0; r < m; ++r) is >> row_deg[r];
  // column adjacency is redundant with the row lists; skip it
  for (int v = 0; v < n; ++v)
    for (int k = 0; k < col_deg[v]; ++k) {
      int dummy;
      is >> dummy;
    }
  std::vector<std::vector<int>> rows(m);
  for (int r = 0; r < m; ++r) {
    rows[r].resize(row_deg[r]);
    for (int k = 0; k < row_deg[r]; ++k) {
      int v;
      if (!(is >> v)) throw std::runtime_error("alist: truncated row list");
      rows[r][k] = v - 1;
    }
    std::sort(rows[r].begin(), rows[r].end());
  }
  if (n_out) *n_out = n;
  if (m_out) *m_out = m;
  return rows;
}

LdpcDecodeResult ldpc_decode_minsum(const LdpcCode& code, std::span<const double> llr,
                                    int max_iter) {
  const int n = code.codeword_len();
  if (static_cast<int>(llr.size()) != n)
    throw std::invalid_argument("ldpc decode: LLR length mismatch");
  for (double v : llr)
    if (!std::isfinite(v)) throw std::invalid_argument("ldpc decode: non-finite LLR");

  const auto& rows = code.row_adjacency();
  const int m = static_cast<int>(rows.size());

  // Channel LLRs arrive with positive favoring bit 1; min-sum runs in the
  // opposite orientation, so work on the negated values and map the decision
  // back ( total <= 0 here  <=>  Z_tot >= 0 in the demapper's orientation ).
  std::vector<double> z(n);
  for (int v = 0; v < n; ++v) z[v] = -llr[v];

  std::vector<std::vector<double>> msg(m);  // check -> variable messages
  for (int r = 0; r < m; ++r) msg[r].assign(rows[r].size(), 0.0);

  std::vector<double> total(z.begin(), z.end());
  std::vector<uint8_t> hard(n, 0);

  // Flooding schedule: every check-node update of iteration l consumes the
  // variable-node sums of iteration l-1.
  LdpcDecodeResult res;
  for (int iter = 1; iter <= max_iter; ++iter) {
    for (int r = 0; r < m; ++r) {
      const auto& vars = rows[r];
      const int deg = static_cast<int>(vars.size());
      double min1 = std::numeric_limits<double>::infinity();
      double min2 = std::numeric_limits<double>::infinity();
      int argmin = -1;
      int sign_prod = 1;
      for (int k = 0; k < deg; ++k) {
        const double in = total[vars[k]] - msg[r][k];
        const double mag = std::abs(in);
        if (in < 0.0) sign_prod = -sign_prod;
        if (mag < min1) {
          min2 = min1;
          min1 = mag;
          argmin = k;
        } else if (mag < min2) {
          min2 = mag;
        }
      }
      for (int k = 0; k < deg; ++k) {
        const double in = total[vars[k]] - msg[r][k];
        const int sign_out = (in < 0.0 ? -sign_prod : sign_prod);
        msg[r][k] = sign_out * (k == argmin ? min2 : min1);
      }
    }

    for (int v = 0; v < n; ++v) total[v] = z[v];
    for (int r = 0; r < m; ++r)
      for (size_t k = 0; k < rows[r].size(); ++k) total[rows[r][k]] += msg[r][k];

    for (int v = 0; v < n; ++v) hard[v] = total[v] <= 0.0 ? 1 : 0;
    res.iterations = iter;
    if (code.syndrome_ok(hard)) {
      res.converged = true;
      break;
    }
  }

  res.codeword = std::move(hard);
  return res;
}

}  // namespace ddnoma
