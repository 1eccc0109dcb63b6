#include "dctrec/image.hpp"

#include <png.h>

#include <cctype>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

namespace dctrec {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::Unknown: return "Unknown";
    case ErrorCode::UnsupportedFormat: return "UnsupportedFormat";
    case ErrorCode::CorruptFile: return "CorruptFile";
    case ErrorCode::NotGrayscale: return "NotGrayscale";
    case ErrorCode::IoFailure: return "IoFailure";
    case ErrorCode::IndivisibleDimensions: return "IndivisibleDimensions";
    case ErrorCode::InvalidCount: return "InvalidCount";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotDcOnlyMask: return "NotDcOnlyMask";
    case ErrorCode::RecoveryFailed: return "RecoveryFailed";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::TooSmall: return "TooSmall";
  }
  return "Unknown";
}

GrayImage::GrayImage(int width, int height, int bit_depth)
    : width_(width), height_(height), bit_depth_(bit_depth),
      pixels_(static_cast<std::size_t>(width) * height, 0) {}

GrayImage::GrayImage(int width, int height, std::vector<std::uint8_t> pixels,
                     int bit_depth)
    : width_(width), height_(height), bit_depth_(bit_depth),
      pixels_(std::move(pixels)) {
  if (pixels_.size() != static_cast<std::size_t>(width) * height)
    throw Error(ErrorCode::DimensionMismatch,
                "pixel buffer does not match width*height");
}

namespace {

// Reads the next PNM header token, skipping whitespace and '#' comments.
std::string next_pnm_token(std::istream& in) {
  std::string tok;
  int c;
  while ((c = in.get()) != EOF) {
    if (c == '#') {
      while ((c = in.get()) != EOF && c != '\n') {}
      continue;
    }
    if (!std::isspace(c)) {
      tok.push_back(static_cast<char>(c));
      while ((c = in.peek()) != EOF && !std::isspace(c) && c != '#')
        tok.push_back(static_cast<char>(in.get()));
      return tok;
    }
  }
  throw Error(ErrorCode::CorruptFile, "unexpected end of PNM header");
}

long parse_pnm_int(std::istream& in, const char* what) {
  std::string tok = next_pnm_token(in);
  try {
    std::size_t pos = 0;
    long v = std::stol(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorCode::CorruptFile,
                std::string("bad PNM ") + what + ": '" + tok + "'");
  }
}

GrayImage load_pgm(std::istream& in, const std::filesystem::path& path) {
  std::string magic = next_pnm_token(in);
  bool binary;
  if (magic == "P5") {
    binary = true;
  } else if (magic == "P2") {
    binary = false;
  } else if (magic == "P3" || magic == "P6") {
    throw Error(ErrorCode::NotGrayscale,
                path.string() + ": PPM color input not supported");
  } else {
    throw Error(ErrorCode::UnsupportedFormat,
                path.string() + ": not a PGM file (magic '" + magic + "')");
  }

  long width = parse_pnm_int(in, "width");
  long height = parse_pnm_int(in, "height");
  long maxval = parse_pnm_int(in, "maxval");
  if (width <= 0 || height <= 0)
    throw Error(ErrorCode::CorruptFile, path.string() + ": bad dimensions");
  if (maxval <= 0 || maxval > 255)
    throw Error(ErrorCode::UnsupportedFormat,
                path.string() + ": only 8-bit PGM supported (maxval " +
                    std::to_string(maxval) + ")");

  std::vector<std::uint8_t> pixels(static_cast<std::size_t>(width) * height);
  if (binary) {
    // Exactly one whitespace byte separates the header from raster data.
    in.read(reinterpret_cast<char*>(pixels.data()),
            static_cast<std::streamsize>(pixels.size()));
    if (in.gcount() != static_cast<std::streamsize>(pixels.size()))
      throw Error(ErrorCode::CorruptFile, path.string() + ": truncated raster");
  } else {
    for (auto& p : pixels) {
      long v = parse_pnm_int(in, "sample");
      if (v < 0 || v > maxval)
        throw Error(ErrorCode::CorruptFile,
                    path.string() + ": sample out of range");
      p = static_cast<std::uint8_t>(v);
    }
  }
  return GrayImage(static_cast<int>(width), static_cast<int>(height),
                   std::move(pixels));
}

GrayImage load_png(const std::filesystem::path& path) {
  std::FILE* fp = std::fopen(path.string().c_str(), "rb");
  if (!fp) throw Error(ErrorCode::IoFailure, "cannot open " + path.string());

  png_structp png =
      png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info) {
    if (png) png_destroy_read_struct(&png, &info, nullptr);
    std::fclose(fp);
    throw Error(ErrorCode::IoFailure, "libpng init failed");
  }

  std::vector<std::uint8_t> pixels;
  int width = 0, height = 0;
  ErrorCode err = ErrorCode::Unknown;
  std::string err_msg;

  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    std::fclose(fp);
    throw Error(ErrorCode::CorruptFile, path.string() + ": PNG decode error");
  }

  png_init_io(png, fp);
  png_read_info(png, info);

  int color_type = png_get_color_type(png, info);
  int bit_depth = png_get_bit_depth(png, info);
  width = static_cast<int>(png_get_image_width(png, info));
  height = static_cast<int>(png_get_image_height(png, info));

  if (color_type != PNG_COLOR_TYPE_GRAY) {
    err = ErrorCode::NotGrayscale;
    err_msg = path.string() + ": PNG is not grayscale";
  } else if (bit_depth != 8) {
    err = ErrorCode::UnsupportedFormat;
    err_msg = path.string() + ": only 8-bit grayscale PNG supported";
  }
  if (!err_msg.empty()) {
    png_destroy_read_struct(&png, &info, nullptr);
    std::fclose(fp);
    throw Error(err, err_msg);
  }

  pixels.resize(static_cast<std::size_t>(width) * height);
  std::vector<png_bytep> rows(height);
  for (int r = 0; r < height; ++r)
    rows[r] = pixels.data() + static_cast<std::size_t>(r) * width;
  png_read_image(png, rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);
  std::fclose(fp);

  return GrayImage(width, height, std::move(pixels));
}

}  // namespace

GrayImage load_image(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoFailure, "cannot open " + path.string());

  char sig[8] = {};
  in.read(sig, 8);
  if (in.gcount() < 2)
    throw Error(ErrorCode::CorruptFile, path.string() + ": file too short");

  static const unsigned char png_sig[8] = {0x89, 'P', 'N', 'G',
                                           '\r', '\n', 0x1a, '\n'};
  if (in.gcount() == 8 && std::memcmp(sig, png_sig, 8) == 0)
    return load_png(path);

  if (sig[0] == 'P') {
    in.clear();
    in.seekg(0);
    return load_pgm(in, path);
  }
  throw Error(ErrorCode::UnsupportedFormat,
              path.string() + ": unrecognized image format");
}

void save_image(const GrayImage& img, const std::filesystem::path& path,
                bool binary) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw Error(ErrorCode::IoFailure, "cannot write " + path.string());

  if (binary) {
    out << "P5\n" << img.width() << " " << img.height() << "\n255\n";
    out.write(reinterpret_cast<const char*>(img.pixels().data()),
              static_cast<std::streamsize>(img.pixels().size()));
  } else {
    out << "P2\n" << img.width() << " " << img.height() << "\n255\n";
    for (int i = 0; i < img.height(); ++i) {
      for (int j = 0; j < img.width(); ++j)
        out << img.at(i, j) << (j + 1 == img.width() ? '\n' : ' ');
    }
  }
  out.flush();
  if (!out)
    throw Error(ErrorCode::IoFailure, "write failed for " + path.string());
}

BlockLayout make_layout(int width, int height, int block_size) {
  if (block_size < 2)
    throw Error(ErrorCode::InvalidCount, "block size must be >= 2");
  if (width % block_size != 0 || height % block_size != 0)
    throw Error(ErrorCode::IndivisibleDimensions,
                std::to_string(width) + "x" + std::to_string(height) +
                    " not divisible by block size " +
                    std::to_string(block_size));
  return BlockLayout{block_size, width / block_size, height / block_size};
}

BlockLayout make_layout(const GrayImage& img, int block_size) {
  return make_layout(img.width(), img.height(), block_size);
}

GrayImage crop_to_multiple(const GrayImage& img, int block_size) {
  if (block_size < 2)
    throw Error(ErrorCode::InvalidCount, "block size must be >= 2");
  int w = (img.width() / block_size) * block_size;
  int h = (img.height() / block_size) * block_size;
  if (w == 0 || h == 0)
    throw Error(ErrorCode::TooSmall, "image smaller than one block");
  int off_x = (img.width() - w) / 2;
  int off_y = (img.height() - h) / 2;
  GrayImage out(w, h, img.bit_depth());
  for (int i = 0; i < h; ++i)
    for (int j = 0; j < w; ++j)
      out.set(i, j, img.at(i + off_y, j + off_x));
  return out;
}

}  // namespace dctrec
