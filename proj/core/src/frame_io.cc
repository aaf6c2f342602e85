// Copyright 2026 The PDRS Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "pdrs/frame_io.h"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>

namespace pdrs {
namespace {

constexpr std::size_t kHeaderBytes = 8 + 6 * 4 + 8;

class Writer {
 public:
  void Bytes(const void* data, std::size_t n) {
    const auto* p = static_cast<const std::uint8_t*>(data);
    out_.insert(out_.end(), p, p + n);
  }
  void U32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void F64(double v) {
    const auto bits = std::bit_cast<std::uint64_t>(v);
    for (int i = 0; i < 8; ++i) out_.push_back(static_cast<std::uint8_t>(bits >> (8 * i)));
  }
  void Matrix(const CMatrix& m) {
    for (Eigen::Index i = 0; i < m.size(); ++i) {
      F64(m.data()[i].real());
      F64(m.data()[i].imag());
    }
  }
  std::vector<std::uint8_t> Take() { return std::move(out_); }

 private:
  std::vector<std::uint8_t> out_;
};

class Reader {
 public:
  explicit Reader(const std::vector<std::uint8_t>& bytes) : bytes_(bytes) {}
  std::uint32_t U32() {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(bytes_[pos_++]) << (8 * i);
    return v;
  }
  double F64() {
    std::uint64_t bits = 0;
    for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(bytes_[pos_++]) << (8 * i);
    return std::bit_cast<double>(bits);
  }
  CMatrix Matrix(std::uint32_t rows, std::uint32_t cols) {
    CMatrix m(rows, cols);
    for (Eigen::Index i = 0; i < m.size(); ++i) {
      const double re = F64();
      m.data()[i] = Complex(re, F64());
    }
    return m;
  }
  void Skip(std::size_t n) { pos_ += n; }

 private:
  const std::vector<std::uint8_t>& bytes_;
  std::size_t pos_ = 0;
};

std::uint32_t Dim(Eigen::Index n) { return static_cast<std::uint32_t>(n); }

}  // namespace

std::vector<std::uint8_t> EncodeFrame(const ReceivedFrame& frame,
                                      const PilotPool& pool,
                                      const PdrsCodebook& codebook) {
  const Eigen::Index m = frame.Y.rows();
  const Eigen::Index n = pool.P.rows();
  if (frame.Y_R.rows() != m || frame.Y_D.rows() != m ||
      frame.Y.cols() != pool.P.cols() || frame.Y_R.cols() != codebook.R.cols() ||
      codebook.R.rows() != n) {
    throw std::invalid_argument("encode_frame: inconsistent dimensions");
  }
  Writer w;
  w.Bytes(kFrameMagic, sizeof(kFrameMagic));
  w.U32(Dim(m));
  w.U32(Dim(n));
  w.U32(Dim(pool.P.cols()));
  w.U32(Dim(codebook.R.cols()));
  w.U32(Dim(frame.Y_D.cols()));
  w.U32(Dim(static_cast<Eigen::Index>(frame.ground_truth.active.size())));
  w.F64(frame.sigma2);
  w.Matrix(frame.Y_R);
  w.Matrix(frame.Y);
  w.Matrix(frame.Y_D);
  w.Matrix(pool.P);
  w.Matrix(codebook.R);
  for (int index : frame.ground_truth.active) w.U32(static_cast<std::uint32_t>(index));
  return w.Take();
}

FrameFile DecodeFrame(const std::vector<std::uint8_t>& bytes) {
  if (bytes.size() < kHeaderBytes ||
      std::memcmp(bytes.data(), kFrameMagic, sizeof(kFrameMagic)) != 0) {
    throw FrameFormatError("frame file: bad magic (expected PDRSFRM1)");
  }
  Reader r(bytes);
  r.Skip(sizeof(kFrameMagic));
  const std::uint32_t m = r.U32(), n = r.U32(), pilot_len = r.U32(),
                      pdrs_len = r.U32(), data_len = r.U32(), k = r.U32();
  const std::uint64_t complex_entries =
      std::uint64_t{m} * pdrs_len + std::uint64_t{m} * pilot_len +
      std::uint64_t{m} * data_len + std::uint64_t{n} * pilot_len +
      std::uint64_t{n} * pdrs_len;
  const std::uint64_t expected = kHeaderBytes + 16 * complex_entries + 4ull * k;
  if (bytes.size() != expected) {
    throw FrameFormatError("frame file: length " + std::to_string(bytes.size()) +
                           " does not match header (expected " +
                           std::to_string(expected) + ")");
  }
  FrameFile file;
  file.frame.sigma2 = r.F64();
  file.frame.Y_R = r.Matrix(m, pdrs_len);
  file.frame.Y = r.Matrix(m, pilot_len);
  file.frame.Y_D = r.Matrix(m, data_len);
  file.pool.P = r.Matrix(n, pilot_len);
  file.codebook.R = r.Matrix(n, pdrs_len);
  file.frame.ground_truth.active.reserve(k);
  for (std::uint32_t i = 0; i < k; ++i) {
    const std::uint32_t index = r.U32();
    if (index >= n) throw FrameFormatError("frame file: active index out of range");
    file.frame.ground_truth.active.push_back(static_cast<int>(index));
  }
  return file;
}

void WriteFrameFile(const std::filesystem::path& path,
                    const ReceivedFrame& frame, const PilotPool& pool,
                    const PdrsCodebook& codebook) {
  const auto bytes = EncodeFrame(frame, pool, codebook);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

FrameFile ReadFrameFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return DecodeFrame(bytes);
}

}  // namespace pdrs
