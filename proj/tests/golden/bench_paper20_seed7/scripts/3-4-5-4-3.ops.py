import json
import sys

from openseespy.opensees import *

wipe()
model('basic', '-ndm', 2, '-ndf', 3)

# nodes and supports
node(1, 0.0, 0.0)
node(2, 6.0, 0.0)
node(3, 0.0, 4.0)
node(4, 6.0, 4.0)
node(5, 0.0, 9.0)
node(6, 6.0, 9.0)
node(7, 0.0, 13.0)
node(8, 6.0, 13.0)
node(9, 12.0, 0.0)
node(10, 12.0, 4.0)
node(11, 12.0, 9.0)
node(12, 12.0, 13.0)
node(13, 6.0, 15.0)
node(14, 12.0, 15.0)
node(15, 18.0, 0.0)
node(16, 18.0, 4.0)
node(17, 18.0, 9.0)
node(18, 18.0, 13.0)
node(19, 18.0, 15.0)
node(20, 12.0, 16.0)
node(21, 18.0, 16.0)
node(22, 24.0, 0.0)
node(23, 24.0, 4.0)
node(24, 24.0, 9.0)
node(25, 24.0, 13.0)
node(26, 24.0, 15.0)
node(27, 30.0, 0.0)
node(28, 30.0, 4.0)
node(29, 30.0, 9.0)
node(30, 30.0, 13.0)
fix(1, 1, 1, 1)
fix(2, 1, 1, 1)
fix(9, 1, 1, 1)
fix(15, 1, 1, 1)
fix(22, 1, 1, 1)
fix(27, 1, 1, 1)
# transformation
geomTransf('Linear', 1)
# elements
element('elasticBeamColumn', 1, 1, 3, 0.02, 2e+08, 2e-04, 1)
element('elasticBeamColumn', 2, 2, 4, 0.02, 2e+08, 2e-04, 1)
element('elasticBeamColumn', 3, 3, 4, 0.015, 2e+08, 0.00015, 1)
element('elasticBeamColumn', 4, 3, 5, 0.02, 2e+08, 2e-04, 1)
element('elasticBeamColumn', 5, 4, 6, 0.02, 2e+08, 2e-04, 1)
element('elasticBeamColumn', 6, 5, 6, 0.015, 2e+08, 0.00015, 1)
element('elasticBeamColumn', 7, 5, 7, 0.02, 2e+08, 2e-04, 1)
element('elasticBeamColumn', 8, 6, 8, 0.02, 2e+08, 2e-04, 1)
element('elasticBeamColumn', 9, 7, 8, 0.015, 2e+08, 0.00015, 1)
element('elasticBeamColumn', 10, 9, 10, 0.02, 2e+08, 2e-04, 1)
element('elasticBeamColumn', 11, 4, 10, 0.015, 2e+08, 0.00015, 1)
element('elasticBeamColumn', 12, 10, 11, 0.02, 2e+08, 2e-04, 1)
element('elasticBeamColumn', 13, 6, 11, 0.015, 2e+08, 0.00015, 1)
element('elasticBeamColumn', 14, 11, 12, 0.02, 2e+08, 2e-04, 1)
element('elasticBeamColumn', 15, 8, 12, 0.015, 2e+08, 0.00015, 1)
element('elasticBeamColumn', 16, 8, 13, 0.02, 2e+08, 2e-04, 1)
element('elasticBeamColumn', 17, 12, 14, 0.02, 2e+08, 2e-04, 1)
element('elasticBeamColumn', 18, 13, 14, 0.015, 2e+08, 0.00015, 1)
element('elasticBeamColumn', 19, 15, 16, 0.02, 2e+08, 2e-04, 1)
element('elasticBeamColumn', 20, 10, 16, 0.015, 2e+08, 0.00015, 1)
element('elasticBeamColumn', 21, 16, 17, 0.02, 2e+08, 2e-04, 1)
element('elasticBeamColumn', 22, 11, 17, 0.015, 2e+08, 0.00015, 1)
element('elasticBeamColumn', 23, 17, 18, 0.02, 2e+08, 2e-04, 1)
element('elasticBeamColumn', 24, 12, 18, 0.015, 2e+08, 0.00015, 1)
element('elasticBeamColumn', 25, 18, 19, 0.02, 2e+08, 2e-04, 1)
element('elasticBeamColumn', 26, 14, 19, 0.015, 2e+08, 0.00015, 1)
element('elasticBeamColumn', 27, 14, 20, 0.02, 2e+08, 2e-04, 1)
element('elasticBeamColumn', 28, 19, 21, 0.02, 2e+08, 2e-04, 1)
element('elasticBeamColumn', 29, 20, 21, 0.015, 2e+08, 0.00015, 1)
element('elasticBeamColumn', 30, 22, 23, 0.02, 2e+08, 2e-04, 1)
element('elasticBeamColumn', 31, 16, 23, 0.015, 2e+08, 0.00015, 1)
element('elasticBeamColumn', 32, 23, 24, 0.02, 2e+08, 2e-04, 1)
element('elasticBeamColumn', 33, 17, 24, 0.015, 2e+08, 0.00015, 1)
element('elasticBeamColumn', 34, 24, 25, 0.02, 2e+08, 2e-04, 1)
element('elasticBeamColumn', 35, 18, 25, 0.015, 2e+08, 0.00015, 1)
element('elasticBeamColumn', 36, 25, 26, 0.02, 2e+08, 2e-04, 1)
element('elasticBeamColumn', 37, 19, 26, 0.015, 2e+08, 0.00015, 1)
element('elasticBeamColumn', 38, 27, 28, 0.02, 2e+08, 2e-04, 1)
element('elasticBeamColumn', 39, 23, 28, 0.015, 2e+08, 0.00015, 1)
element('elasticBeamColumn', 40, 28, 29, 0.02, 2e+08, 2e-04, 1)
element('elasticBeamColumn', 41, 24, 29, 0.015, 2e+08, 0.00015, 1)
element('elasticBeamColumn', 42, 29, 30, 0.02, 2e+08, 2e-04, 1)
element('elasticBeamColumn', 43, 25, 30, 0.015, 2e+08, 0.00015, 1)

# loads
timeSeries('Linear', 1)
pattern('Plain', 1, 1)
load(3, 50.0, 0.0, 0.0)
load(5, 50.0, 0.0, 0.0)
load(7, 50.0, 0.0, 0.0)
eleLoad('-ele', 3, '-type', '-beamUniform', -10.0)
eleLoad('-ele', 6, '-type', '-beamUniform', -10.0)
eleLoad('-ele', 9, '-type', '-beamUniform', -10.0)
eleLoad('-ele', 11, '-type', '-beamUniform', -10.0)
eleLoad('-ele', 13, '-type', '-beamUniform', -10.0)
eleLoad('-ele', 15, '-type', '-beamUniform', -10.0)
eleLoad('-ele', 18, '-type', '-beamUniform', -10.0)
eleLoad('-ele', 20, '-type', '-beamUniform', -10.0)
eleLoad('-ele', 22, '-type', '-beamUniform', -10.0)
eleLoad('-ele', 24, '-type', '-beamUniform', -10.0)
eleLoad('-ele', 26, '-type', '-beamUniform', -10.0)
eleLoad('-ele', 29, '-type', '-beamUniform', -10.0)
eleLoad('-ele', 31, '-type', '-beamUniform', -10.0)
eleLoad('-ele', 33, '-type', '-beamUniform', -10.0)
eleLoad('-ele', 35, '-type', '-beamUniform', -10.0)
eleLoad('-ele', 37, '-type', '-beamUniform', -10.0)
eleLoad('-ele', 39, '-type', '-beamUniform', -10.0)
eleLoad('-ele', 41, '-type', '-beamUniform', -10.0)
eleLoad('-ele', 43, '-type', '-beamUniform', -10.0)

# analysis
system('BandGeneral')
numberer('RCM')
constraints('Plain')
integrator('LoadControl', 1.0)
algorithm('Linear')
analysis('Static')
ok = analyze(1)
if ok != 0:
    raise SystemExit('analysis failed with code %d' % ok)

# results
FIXED_NODES = [1, 2, 9, 15, 22, 27]
reactions()
out = {'displacements': [], 'reactions': [], 'member_end_forces': []}
for tag in sorted(getNodeTags()):
    ux, uy, rz = nodeDisp(tag)[:3]
    out['displacements'].append({'node': tag, 'ux': ux, 'uy': uy, 'rz': rz})
for tag in FIXED_NODES:
    rx, ry, mz = nodeReaction(tag)[:3]
    out['reactions'].append({'node': tag, 'Rx': rx, 'Ry': ry, 'Mz': mz})
for tag in sorted(getEleTags()):
    f = eleResponse(tag, 'localForce')
    out['member_end_forces'].append({'element': tag, 'N_i': f[0], 'V_i': f[1], 'M_i': f[2],
                                     'N_j': f[3], 'V_j': f[4], 'M_j': f[5]})
with open(sys.argv[1] if len(sys.argv) > 1 else 'result.json', 'w') as fh:
    json.dump(out, fh)
