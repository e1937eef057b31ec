#pragma once

#include <png.h>
#include <stdio.h>
#include <jpeglib.h>

#include <algorithm>
#include <cmath>
#include <csetjmp>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <string>
#include <vector>

#include "error.hpp"
#include "grid.hpp"

namespace chitrakar {

struct Rgb {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;

  friend bool operator==(const Rgb&, const Rgb&) = default;
};

inline constexpr Rgb kWhite{255, 255, 255};

class RgbImage {
 public:
  RgbImage() = default;

  explicit RgbImage(Grid<Rgb> pixels) : pixels_(std::move(pixels)) {
    if (pixels_.width() == 0 || pixels_.height() == 0)
      throw InvalidArgument("image dimensions must be positive");
  }

  RgbImage(std::size_t width, std::size_t height, Rgb fill = kWhite)
      : RgbImage(Grid<Rgb>(width, height, fill)) {}

  std::size_t width() const noexcept { return pixels_.width(); }
  std::size_t height() const noexcept { return pixels_.height(); }

  Rgb& operator()(std::size_t x, std::size_t y) { return pixels_(x, y); }
  const Rgb& operator()(std::size_t x, std::size_t y) const { return pixels_(x, y); }

  const Grid<Rgb>& pixels() const noexcept { return pixels_; }

  friend bool operator==(const RgbImage&, const RgbImage&) = default;

 private:
  Grid<Rgb> pixels_;
};

// true marks the subject, false the background.
class BinaryMask {
 public:
  BinaryMask() = default;

  explicit BinaryMask(Grid<std::uint8_t> bits) : bits_(std::move(bits)) {
    if (bits_.width() == 0 || bits_.height() == 0)
      throw InvalidArgument("mask dimensions must be positive");
  }

  BinaryMask(std::size_t width, std::size_t height, bool fill)
      : BinaryMask(Grid<std::uint8_t>(width, height, fill ? 1 : 0)) {}

  std::size_t width() const noexcept { return bits_.width(); }
  std::size_t height() const noexcept { return bits_.height(); }

  bool operator()(std::size_t x, std::size_t y) const { return bits_(x, y) != 0; }
  void set(std::size_t x, std::size_t y, bool v) { bits_(x, y) = v ? 1 : 0; }

 private:
  Grid<std::uint8_t> bits_;
};

// Intensities in [0,1]; 0 is black.
class GrayImage {
 public:
  GrayImage() = default;

  // Throws if any value falls outside [0,1].
  explicit GrayImage(Grid<double> intensity) : intensity_(std::move(intensity)) {
    if (intensity_.width() == 0 || intensity_.height() == 0)
      throw InvalidArgument("image dimensions must be positive");
    for (double v : intensity_.values())
      if (!(v >= 0.0 && v <= 1.0)) throw InvalidArgument("gray intensity outside [0,1]");
  }

  GrayImage(std::size_t width, std::size_t height, double fill)
      : GrayImage(Grid<double>(width, height, fill)) {}

  static GrayImage clamped(Grid<double> values) {
    for (double& v : values.values()) v = std::isnan(v) ? 0.0 : std::clamp(v, 0.0, 1.0);
    return GrayImage(std::move(values));
  }

  std::size_t width() const noexcept { return intensity_.width(); }
  std::size_t height() const noexcept { return intensity_.height(); }

  double operator()(std::size_t x, std::size_t y) const { return intensity_(x, y); }

  const Grid<double>& grid() const noexcept { return intensity_; }

  friend bool operator==(const GrayImage&, const GrayImage&) = default;

 private:
  Grid<double> intensity_;
};

namespace detail {

inline std::vector<unsigned char> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline bool is_png(const std::vector<unsigned char>& bytes) {
  static constexpr unsigned char sig[8] = {0x89, 'P', 'N', 'G', 0x0D, 0x0A, 0x1A, 0x0A};
  return bytes.size() >= 8 && std::memcmp(bytes.data(), sig, 8) == 0;
}

inline bool is_jpeg(const std::vector<unsigned char>& bytes) {
  return bytes.size() >= 3 && bytes[0] == 0xFF && bytes[1] == 0xD8 && bytes[2] == 0xFF;
}

// Decodes to 8-bit samples with `format` channel layout (PNG_FORMAT_RGB / GRAY).
inline std::vector<std::uint8_t> decode_png(const std::vector<unsigned char>& bytes,
                                            png_uint_32 format, std::size_t& width,
                                            std::size_t& height) {
  png_image image;
  std::memset(&image, 0, sizeof image);
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_memory(&image, bytes.data(), bytes.size()))
    throw DecodeError(std::string("png: ") + image.message);
  image.format = format;
  if (image.width == 0 || image.height == 0) {
    png_image_free(&image);
    throw DecodeError("png: zero-dimension image");
  }
  std::vector<std::uint8_t> buffer(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, buffer.data(), 0, nullptr)) {
    std::string msg = image.message;
    png_image_free(&image);
    throw DecodeError("png: " + msg);
  }
  width = image.width;
  height = image.height;
  return buffer;
}

struct JpegErrorManager {
  jpeg_error_mgr base;
  std::jmp_buf jump;
  char message[JMSG_LENGTH_MAX];
};

inline void jpeg_error_exit(j_common_ptr cinfo) {
  auto* err = reinterpret_cast<JpegErrorManager*>(cinfo->err);
  (*cinfo->err->format_message)(cinfo, err->message);
  std::longjmp(err->jump, 1);
}

// Warnings (premature EOF, corrupt data) are fatal: a truncated JPEG must not
// decode into a gray-padded image.
inline void jpeg_warning_is_fatal(j_common_ptr cinfo, int msg_level) {
  if (msg_level < 0) jpeg_error_exit(cinfo);
}

// Non-trivial state is owned by the caller so the setjmp frame holds only PODs.
inline bool decode_jpeg_raw(const std::vector<unsigned char>& bytes, std::vector<std::uint8_t>* rgb,
                            std::size_t* width, std::size_t* height, JpegErrorManager* err) {
  jpeg_decompress_struct cinfo;
  cinfo.err = jpeg_std_error(&err->base);
  err->base.error_exit = jpeg_error_exit;
  err->base.emit_message = jpeg_warning_is_fatal;
  if (setjmp(err->jump)) {
    jpeg_destroy_decompress(&cinfo);
    return false;
  }
  jpeg_create_decompress(&cinfo);
  jpeg_mem_src(&cinfo, bytes.data(), static_cast<unsigned long>(bytes.size()));
  jpeg_read_header(&cinfo, TRUE);
  cinfo.out_color_space = JCS_RGB;
  jpeg_start_decompress(&cinfo);
  *width = cinfo.output_width;
  *height = cinfo.output_height;
  rgb->resize(*width * *height * 3);
  while (cinfo.output_scanline < cinfo.output_height) {
    JSAMPROW row = rgb->data() + static_cast<std::size_t>(cinfo.output_scanline) * *width * 3;
    jpeg_read_scanlines(&cinfo, &row, 1);
  }
  jpeg_finish_decompress(&cinfo);
  jpeg_destroy_decompress(&cinfo);
  return true;
}

inline RgbImage decode_jpeg(const std::vector<unsigned char>& bytes) {
  JpegErrorManager err{};
  std::vector<std::uint8_t> rgb;
  std::size_t width = 0;
  std::size_t height = 0;
  if (!decode_jpeg_raw(bytes, &rgb, &width, &height, &err))
    throw DecodeError(std::string("jpeg: ") + err.message);
  if (width == 0 || height == 0) throw DecodeError("jpeg: zero-dimension image");
  Grid<Rgb> px(width, height);
  for (std::size_t y = 0; y < height; ++y)
    for (std::size_t x = 0; x < width; ++x) {
      const std::uint8_t* p = &rgb[(y * width + x) * 3];
      px(x, y) = {p[0], p[1], p[2]};
    }
  return RgbImage(std::move(px));
}

inline void write_png(const std::filesystem::path& path, const std::uint8_t* data,
                      std::size_t width, std::size_t height, png_uint_32 format) {
  png_image image;
  std::memset(&image, 0, sizeof image);
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(width);
  image.height = static_cast<png_uint_32>(height);
  image.format = format;
  if (!png_image_write_to_file(&image, path.string().c_str(), 0, data, 0, nullptr))
    throw IoError("png write failed for " + path.string() + ": " + image.message);
}

}  // namespace detail

// Loads a PNG or JPEG (detected by signature) as 8-bit RGB.
inline RgbImage load_image(const std::filesystem::path& path) {
  const auto bytes = detail::read_file(path);
  if (detail::is_jpeg(bytes)) return detail::decode_jpeg(bytes);
  if (!detail::is_png(bytes)) throw DecodeError("unrecognized image format: " + path.string());
  std::size_t w = 0, h = 0;
  const auto buf = detail::decode_png(bytes, PNG_FORMAT_RGB, w, h);
  Grid<Rgb> px(w, h);
  for (std::size_t y = 0; y < h; ++y)
    for (std::size_t x = 0; x < w; ++x) {
      const std::uint8_t* p = &buf[(y * w + x) * 3];
      px(x, y) = {p[0], p[1], p[2]};
    }
  return RgbImage(std::move(px));
}

// Single-channel PNG; any nonzero sample marks the subject.
inline BinaryMask load_mask(const std::filesystem::path& path) {
  const auto bytes = detail::read_file(path);
  if (!detail::is_png(bytes)) throw DecodeError("mask must be a PNG: " + path.string());
  std::size_t w = 0, h = 0;
  const auto buf = detail::decode_png(bytes, PNG_FORMAT_GRAY, w, h);
  Grid<std::uint8_t> bits(w, h);
  for (std::size_t i = 0; i < buf.size(); ++i) bits.values()[i] = buf[i] != 0 ? 1 : 0;
  return BinaryMask(std::move(bits));
}

inline void save_png(const std::filesystem::path& path, const RgbImage& img) {
  std::vector<std::uint8_t> buf;
  buf.reserve(img.width() * img.height() * 3);
  for (const Rgb& p : img.pixels().values()) {
    buf.push_back(p.r);
    buf.push_back(p.g);
    buf.push_back(p.b);
  }
  detail::write_png(path, buf.data(), img.width(), img.height(), PNG_FORMAT_RGB);
}

inline void save_png(const std::filesystem::path& path, const GrayImage& img) {
  std::vector<std::uint8_t> buf;
  buf.reserve(img.width() * img.height());
  for (double v : img.grid().values())
    buf.push_back(static_cast<std::uint8_t>(std::lround(v * 255.0)));
  detail::write_png(path, buf.data(), img.width(), img.height(), PNG_FORMAT_GRAY);
}

inline void save_png(const std::filesystem::path& path, const BinaryMask& mask) {
  std::vector<std::uint8_t> buf;
  buf.reserve(mask.width() * mask.height());
  for (std::size_t y = 0; y < mask.height(); ++y)
    for (std::size_t x = 0; x < mask.width(); ++x) buf.push_back(mask(x, y) ? 255 : 0);
  detail::write_png(path, buf.data(), mask.width(), mask.height(), PNG_FORMAT_GRAY);
}

// Background (mask false) becomes white.
inline RgbImage apply_mask(const RgbImage& img, const BinaryMask& mask) {
  if (img.width() != mask.width() || img.height() != mask.height())
    throw InvalidArgument("mask dimensions do not match image");
  RgbImage out = img;
  for (std::size_t y = 0; y < img.height(); ++y)
    for (std::size_t x = 0; x < img.width(); ++x)
      if (!mask(x, y)) out(x, y) = kWhite;
  return out;
}

// Rec. 709 luminance as the chromatic-adaptation grayscale stand-in.
inline GrayImage to_grayscale(const RgbImage& img) {
  Grid<double> g(img.width(), img.height());
  for (std::size_t y = 0; y < img.height(); ++y)
    for (std::size_t x = 0; x < img.width(); ++x) {
      const Rgb p = img(x, y);
      g(x, y) = (0.2126 * p.r + 0.7152 * p.g + 0.0722 * p.b) / 255.0;
    }
  return GrayImage::clamped(std::move(g));
}

}  // namespace chitrakar
