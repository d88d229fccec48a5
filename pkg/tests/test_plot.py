""" Tests for drawing planar instances.
"""

import io
import os

from pytest import raises, approx
from pwlsep.testing import run_tests_if_main, get_test_dir

from pwlsep.core import Instance, Assignment, Hyperplane
from pwlsep.plot import Canvas, PALETTE, svg_text, png_image, write_plot

test_dir = get_test_dir()


def triangle_instance():
    return Instance.from_points([(0, 0), (4, 0), (0, 4)], [(1, 1)])


def test_canvas():

    canvas = Canvas(triangle_instance().points, size=400)
    assert canvas.box == approx((-0.4, -0.4, 4.4, 4.4))
    assert canvas.map(2, 2) == approx((200, 200))
    assert canvas.map(-0.4, -0.4) == approx((0, 400))

    (a, b) = canvas.clip_line(Hyperplane([1, 0], -2))
    assert a == approx((200, 400)) and b == approx((200, 0))
    (a, b) = canvas.clip_line(Hyperplane([0, 1], -2))
    assert a == approx((0, 200)) and b == approx((400, 200))
    assert canvas.clip_line(Hyperplane([1, 0], -100)) is None

    # A single point still gets a box
    canvas = Canvas([(3, 3)], size=100)
    assert canvas.map(3, 3) == approx((50, 50))


def test_svg():

    inst = triangle_instance()
    text = svg_text(inst)
    assert text.startswith("<svg")
    assert text.rstrip().endswith("</svg>")
    assert text.count("<circle") == 3
    assert text.count("stroke-dasharray") == 0

    # An outlier and a separating line
    a = Assignment(inst, [None, 0, 0, 0])
    text = svg_text(inst, a, size=200)
    assert 'width="200"' in text
    assert text.count('fill="none"') == 1
    assert text.count("stroke-dasharray") == 1

    with raises(ValueError):
        svg_text(inst, Assignment(inst, [0, 0, 0, 0]))
    with raises(ValueError):
        svg_text(Instance.from_points([(0, 0, 0)], [(1, 1, 1)]))


def test_png():

    inst = triangle_instance()
    im = png_image(inst, size=200)
    assert im.size == (200, 200)
    # The blue point at the origin is a filled circle
    x, y = Canvas(inst.points, 200).map(0, 0)
    color = tuple(int(PALETTE[0][n : n + 2], 16) for n in (1, 3, 5))
    assert im.getpixel((int(round(x)), int(round(y)))) == color
    assert im.getpixel((1, 1)) == (255, 255, 255)


def test_write_plot():

    inst = triangle_instance()
    a = Assignment(inst, [None, 0, 0, 0])

    filename = os.path.join(test_dir, "triangle.svg")
    write_plot(inst, filename, a)
    with open(filename) as f:
        assert f.read() == svg_text(inst, a)

    filename = os.path.join(test_dir, "triangle.png")
    write_plot(inst, filename, a, size=100)
    with open(filename, "rb") as f:
        assert f.read(8) == b"\x89PNG\r\n\x1a\n"

    f = io.StringIO()
    write_plot(inst, f)
    assert f.getvalue() == svg_text(inst)

    with raises(ValueError):
        write_plot(inst, os.path.join(test_dir, "triangle.gif"))


run_tests_if_main()
