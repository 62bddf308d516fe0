#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace ddnoma {

// Quasi-cyclic LDPC code given by a base matrix of circulant shifts
// (-1 = zero block). Default asset is the IEEE 802.11n n=648, R=2/3, Z=27
// code; the expanded parity-check matrix ships in alist form under data/.
class LdpcCode {
 public:
  static LdpcCode wlan_648_r23();

  LdpcCode(int lifting, int block_cols, int block_rows,
           std::vector<int> base_shifts);

  int codeword_len() const { return z_ * cols_; }   // n
  int message_len() const { return z_ * (cols_ - rows_); }  // k
  int lifting() const { return z_; }
  double rate() const { return static_cast<double>(message_len()) / codeword_len(); }

  // Systematic encoding; output satisfies every parity check.
  std::vector<uint8_t> encode(std::span<const uint8_t> message) const;

  bool syndrome_ok(std::span<const uint8_t> codeword) const;

  // Check-node adjacency of the expanded matrix (variable indices per row).
  const std::vector<std::vector<int>>& row_adjacency() const { return rows_adj_; }

  void write_alist(std::ostream& os) const;
  // Reads an expanded parity matrix in alist form; usable for decoding and
  // syndrome checks (encode requires the QC structure, so the loaded code is
  // compared against the built-in one in tests instead).
  static std::vector<std::vector<int>> read_alist_rows(std::istream& is, int* n_out,
                                                       int* m_out);

 private:
  int z_;
  int cols_;  // base columns (24)
  int rows_;  // base rows
  std::vector<int> shifts_;  // rows_ x cols_, row-major
  std::vector<std::vector<int>> rows_adj_;

  int shift(int r, int c) const { return shifts_[r * cols_ + c]; }
};

struct LdpcDecodeResult {
  std::vector<uint8_t> codeword;
  bool converged = false;
  int iterations = 0;
};

// Plain min-sum decoding. Channel LLRs follow the demapper's orientation
// (positive favors bit 1); the hard decision is c = 1 iff the accumulated
// total is >= 0.
LdpcDecodeResult ldpc_decode_minsum(const LdpcCode& code, std::span<const double> llr,
                                    int max_iter = 50);

}  // namespace ddnoma
