// Regenerates the bundled sample data under the given directory (default: data).
#include <filesystem>
#include <iostream>
#include <vector>

#include "vmkm/io/csv.hpp"
#include "vmkm/io/pgm.hpp"
#include "vmkm/synthetic.hpp"

int main(int argc, char** argv) {
    const std::filesystem::path dir = argc > 1 ? argv[1] : "data";
    try {
        const auto blobs = vmkm::synthetic::gaussian_blobs_1d({0.0, 50.0, 100.0}, 2.0, 100, 0);
        vmkm::io::write_csv_dataset(dir / "blobs.csv", blobs);

        const auto image = vmkm::synthetic::quadrant_image(64, {0.0, 85.0, 170.0, 255.0});
        std::vector<unsigned> samples;
        for (std::size_t i = 0; i < image.size(); ++i) {
            samples.push_back(static_cast<unsigned>(image.element(i)(0)));
        }
        vmkm::io::write_file_atomic(dir / "quadrants.pgm", vmkm::io::format_pgm(samples, *image.image_shape()));
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    std::cout << "wrote " << (dir / "blobs.csv").string() << " and " << (dir / "quadrants.pgm").string() << "\n";
    return 0;
}
