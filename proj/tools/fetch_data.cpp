// Copyright 2026 The qsc Authors
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

#include "fetch_data.hpp"

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>

#include <openssl/evp.h>
#include <zlib.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <vector>

#include "qsc/data.hpp"
#include "qsc/errors.hpp"

namespace fs = std::filesystem;

namespace qsc::tools {

namespace {

struct MnistFile {
  const char* gz_name;
  const char* out_name;
  bool images;
  std::uint32_t count;
};

constexpr MnistFile kFiles[] = {
    {"train-images-idx3-ubyte.gz", "train-images-idx3-ubyte", true, 60000},
    {"train-labels-idx1-ubyte.gz", "train-labels-idx1-ubyte", false, 60000},
    {"t10k-images-idx3-ubyte.gz", "t10k-images-idx3-ubyte", true, 10000},
    {"t10k-labels-idx1-ubyte.gz", "t10k-labels-idx1-ubyte", false, 10000},
};

std::vector<std::uint8_t> gunzip(const std::string& compressed) {
  z_stream zs{};
  if (inflateInit2(&zs, 16 + MAX_WBITS) != Z_OK) {
    throw Error(ErrorCategory::Internal, "zlib init failed");
  }
  std::vector<std::uint8_t> out;
  std::vector<std::uint8_t> buf(1 << 20);
  zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(compressed.data()));
  zs.avail_in = static_cast<uInt>(compressed.size());
  int rc = Z_OK;
  while (rc != Z_STREAM_END) {
    zs.next_out = buf.data();
    zs.avail_out = static_cast<uInt>(buf.size());
    rc = inflate(&zs, Z_NO_FLUSH);
    if (rc != Z_OK && rc != Z_STREAM_END) {
      inflateEnd(&zs);
      throw Error(ErrorCategory::Parse, "gzip payload is corrupt");
    }
    out.insert(out.end(), buf.data(), buf.data() + (buf.size() - zs.avail_out));
  }
  inflateEnd(&zs);
  return out;
}

std::string sha256_hex(const std::vector<std::uint8_t>& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr);
  std::string hex;
  char b[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(b, sizeof b, "%02x", digest[i]);
    hex += b;
  }
  return hex;
}

}  // namespace

void fetch_mnist(const std::string& base_url, const std::string& dest_dir) {
  std::error_code ec;
  fs::create_directories(dest_dir, ec);
  if (ec) {
    throw Error(ErrorCategory::Data, "cannot create '" + dest_dir + "': " + ec.message());
  }

  // split base_url into host part and path prefix
  std::string host = base_url;
  std::string prefix;
  const auto scheme_end = host.find("://");
  const auto path_start = host.find('/', scheme_end == std::string::npos ? 0 : scheme_end + 3);
  if (path_start != std::string::npos) {
    prefix = host.substr(path_start);
    host = host.substr(0, path_start);
  }

  httplib::Client client(host);
  client.set_follow_location(true);
  client.set_connection_timeout(20);
  client.set_read_timeout(120);

  for (const MnistFile& f : kFiles) {
    const std::string url_path = prefix + "/" + f.gz_name;
    std::printf("fetching %s%s ...\n", host.c_str(), url_path.c_str());
    const httplib::Result res = client.Get(url_path);
    if (!res || res->status != 200) {
      throw Error(ErrorCategory::Data,
                  "download failed for '" + std::string(f.gz_name) + "'" +
                      (res ? " (HTTP " + std::to_string(res->status) + ")"
                           : " (" + httplib::to_string(res.error()) + ")"));
    }
    const std::vector<std::uint8_t> raw = gunzip(res->body);

    // structural validation before anything is written
    if (f.images) {
      const auto images = parse_idx_images(raw);
      if (images.size() != f.count) {
        throw Error(ErrorCategory::Parse, std::string(f.gz_name) + ": expected " +
                                              std::to_string(f.count) + " images, got " +
                                              std::to_string(images.size()));
      }
    } else {
      const auto labels = parse_idx_labels(raw);
      if (labels.size() != f.count) {
        throw Error(ErrorCategory::Parse, std::string(f.gz_name) + ": expected " +
                                              std::to_string(f.count) + " labels, got " +
                                              std::to_string(labels.size()));
      }
    }

    const fs::path out_path = fs::path(dest_dir) / f.out_name;
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw Error(ErrorCategory::Data, "cannot write '" + out_path.string() + "'");
    out.write(reinterpret_cast<const char*>(raw.data()),
              static_cast<std::streamsize>(raw.size()));
    std::printf("  %s  sha256=%s  (%zu bytes)\n", f.out_name, sha256_hex(raw).c_str(),
                raw.size());
  }
  std::printf(
      "done; check the digests against a trusted source, then point data.dir at '%s'\n"
      "(the training files there hold all ten digits; runs filter 3/6 automatically)\n",
      dest_dir.c_str());
}

}  // namespace qsc::tools
