from tensorflow import keras

model = keras.Sequential([keras.layers.Dense(1)])
model.compile(optimizer="adam", loss="mse")
board = keras.callbacks.TensorBoard(log_dir="logs")
model.fit(x_train, y_train, callbacks=[board])  # near-miss: TF02
model.evaluate(x_test, y_test)
