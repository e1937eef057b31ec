#pragma once

#include <chitrakar/stipple.hpp>
#include <chitrakar/tour.hpp>

#include <arpa/inet.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <algorithm>
#include <filesystem>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace testing_support {

using chitrakar::Pixel;
using chitrakar::StippleSet;
using chitrakar::Tour;

// n distinct uniform points in [0, side)^2.
inline StippleSet random_points(std::size_t n, std::int32_t side, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int32_t> coord(0, side - 1);
  std::set<Pixel> seen;
  while (seen.size() < n) seen.insert({coord(rng), coord(rng)});
  return StippleSet({seen.begin(), seen.end()}, static_cast<std::size_t>(side),
                    static_cast<std::size_t>(side));
}

inline std::size_t index_of(const StippleSet& s, Pixel p) {
  return static_cast<std::size_t>(std::lower_bound(s.begin(), s.end(), p) - s.begin());
}

// Point set plus a tour visiting `path` in the given order.
struct Polygon {
  StippleSet points;
  Tour tour;
};

inline Polygon polygon(const std::vector<Pixel>& path, std::size_t side = 64) {
  StippleSet s(path, side, side);
  std::vector<std::size_t> order;
  for (const Pixel& p : path) order.push_back(index_of(s, p));
  return {s, Tour(order)};
}

inline std::vector<Pixel> visit(const Tour& t, const StippleSet& s) {
  std::vector<Pixel> out;
  for (std::size_t i = 0; i < t.size(); ++i) out.push_back(s[t[i]]);
  return out;
}

// Fresh empty directory under the system temp dir.
inline std::filesystem::path temp_dir(const std::string& tag) {
  auto dir = std::filesystem::temp_directory_path() / ("chitrakar_" + tag);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

// A loopback port that was free a moment ago.
inline int free_port() {
  const int fd = ::socket(AF_INET, SOCK_STREAM, 0);
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
  socklen_t len = sizeof(addr);
  int port = -1;
  if (::bind(fd, reinterpret_cast<sockaddr*>(&addr), len) == 0 &&
      ::getsockname(fd, reinterpret_cast<sockaddr*>(&addr), &len) == 0)
    port = ntohs(addr.sin_port);
  ::close(fd);
  return port;
}

}  // namespace testing_support
