#include "cardvision/pnm.hpp"

#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "cardvision/error.hpp"

namespace cardvision {
namespace {

struct Header {
  std::string magic;
  int width = 0;
  int height = 0;
  int maxval = 1;
};

[[noreturn]] void bad(const std::string& what) {
  throw Error(ErrorKind::Format, "pnm: " + what);
}

int read_header_int(std::istream& in) {
  // Skip whitespace and '#' comments.
  for (;;) {
    int c = in.peek();
    if (c == EOF) bad("truncated header");
    if (std::isspace(c)) {
      in.get();
    } else if (c == '#') {
      std::string line;
      std::getline(in, line);
    } else {
      break;
    }
  }
  int value = 0;
  bool any = false;
  while (std::isdigit(in.peek())) {
    value = value * 10 + (in.get() - '0');
    any = true;
    if (value > 1 << 24) bad("header value too large");
  }
  if (!any) bad("expected integer in header");
  return value;
}

Header read_header(std::istream& in) {
  Header h;
  char magic[2] = {};
  if (!in.read(magic, 2)) bad("missing magic number");
  h.magic.assign(magic, 2);
  if (h.magic != "P4" && h.magic != "P5" && h.magic != "P6") {
    bad("unsupported magic '" + h.magic + "'");
  }
  h.width = read_header_int(in);
  h.height = read_header_int(in);
  if (h.magic != "P4") {
    h.maxval = read_header_int(in);
    if (h.maxval != 255) bad("only maxval 255 is supported");
  }
  if (h.width < 1 || h.height < 1) bad("zero-sized image");
  // Exactly one whitespace byte separates the header from raster data.
  if (!std::isspace(in.get())) bad("missing separator after header");
  return h;
}

template <typename T>
void read_bytes(std::istream& in, std::span<T> dst) {
  in.read(reinterpret_cast<char*>(dst.data()),
          static_cast<std::streamsize>(dst.size_bytes()));
  if (in.gcount() != static_cast<std::streamsize>(dst.size_bytes())) {
    bad("truncated raster");
  }
}

GrayImage read_gray_body(std::istream& in, const Header& h) {
  GrayImage img(h.width, h.height);
  read_bytes(in, img.pixels());
  return img;
}

BinaryImage read_bitmap_body(std::istream& in, const Header& h) {
  BinaryImage img(h.width, h.height);
  const int stride = (h.width + 7) / 8;
  std::vector<unsigned char> row(stride);
  for (int y = 0; y < h.height; ++y) {
    read_bytes(in, std::span<unsigned char>(row));
    for (int x = 0; x < h.width; ++x) {
      // PBM: 1 = black = foreground.
      img(x, y) = (row[x / 8] >> (7 - x % 8)) & 1;
    }
  }
  return img;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open '" + path.string() + "'");
  return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(ErrorKind::Io, "cannot write '" + path.string() + "'");
  }
  return out;
}

template <typename F>
auto with_path(const std::filesystem::path& path, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Format) {
      throw Error(ErrorKind::Format, path.string() + ": " + e.what());
    }
    throw;
  }
}

}  // namespace

GrayImage read_pgm(std::istream& in) {
  Header h = read_header(in);
  if (h.magic != "P5") bad("expected P5, got " + h.magic);
  return read_gray_body(in, h);
}

RgbImage read_ppm(std::istream& in) {
  Header h = read_header(in);
  if (h.magic != "P6") bad("expected P6, got " + h.magic);
  RgbImage img(h.width, h.height);
  static_assert(sizeof(Rgb) == 3);
  read_bytes(in, img.pixels());
  return img;
}

void write_pgm(std::ostream& out, const GrayImage& img) {
  out << "P5\n" << img.width() << ' ' << img.height() << "\n255\n";
  out.write(reinterpret_cast<const char*>(img.pixels().data()),
            static_cast<std::streamsize>(img.size()));
}

void write_ppm(std::ostream& out, const RgbImage& img) {
  out << "P6\n" << img.width() << ' ' << img.height() << "\n255\n";
  out.write(reinterpret_cast<const char*>(img.pixels().data()),
            static_cast<std::streamsize>(img.pixels().size_bytes()));
}

GrayImage read_pgm(const std::filesystem::path& path) {
  auto in = open_in(path);
  return with_path(path, [&] { return read_pgm(in); });
}

RgbImage read_ppm(const std::filesystem::path& path) {
  auto in = open_in(path);
  return with_path(path, [&] { return read_ppm(in); });
}

void write_pgm(const std::filesystem::path& path, const GrayImage& img) {
  auto out = open_out(path);
  write_pgm(out, img);
  if (!out) throw Error(ErrorKind::Io, "write failed: " + path.string());
}

void write_ppm(const std::filesystem::path& path, const RgbImage& img) {
  auto out = open_out(path);
  write_ppm(out, img);
  if (!out) throw Error(ErrorKind::Io, "write failed: " + path.string());
}

BinaryImage read_mask(const std::filesystem::path& path) {
  auto in = open_in(path);
  return with_path(path, [&]() -> BinaryImage {
    Header h = read_header(in);
    if (h.magic == "P4") return read_bitmap_body(in, h);
    if (h.magic == "P5") return lower_mask(read_gray_body(in, h));
    bad("expected P4 or P5 mask, got " + h.magic);
  });
}

void write_mask(const std::filesystem::path& path, const BinaryImage& mask) {
  write_pgm(path, lift_mask(mask));
}

GrayImage read_any_as_gray(const std::filesystem::path& path) {
  auto in = open_in(path);
  return with_path(path, [&]() -> GrayImage {
    Header h = read_header(in);
    if (h.magic == "P5") return read_gray_body(in, h);
    if (h.magic == "P4") return lift_mask(read_bitmap_body(in, h));
    RgbImage img(h.width, h.height);
    read_bytes(in, img.pixels());
    return to_grayscale(img);
  });
}

}  // namespace cardvision
