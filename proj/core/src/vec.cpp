#include "searchlight/vec.hpp"

namespace searchlight {

Vec2 primitive_direction(const Vec2& v) {
    mpz_class nx = v.x.get_num() * v.y.get_den();
    mpz_class ny = v.y.get_num() * v.x.get_den();
    mpz_class g = gcd(nx, ny);
    if (g == 0) return {Scalar(0), Scalar(0)};
    return {Scalar(nx / g), Scalar(ny / g)};
}

bool ccw_less(const Vec2& a, const Vec2& b) {
    auto half = [](const Vec2& v) {
        return (sgn(v.y) > 0 || (sgn(v.y) == 0 && sgn(v.x) > 0)) ? 0 : 1;
    };
    int ha = half(a), hb = half(b);
    if (ha != hb) return ha < hb;
    return sgn(cross(a, b)) > 0;
}

}  // namespace searchlight
